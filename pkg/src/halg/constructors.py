"""Builders for convolution, enveloping and Connes-Moscovici Hopf *-algebroids."""

from __future__ import annotations

from .algebra import (Algebra, function_algebra, ground_field, opposite,
                      tensor_algebra)
from .bimodule import tensor_apply
from .groupoid import FiniteGroupoid
from .hopf import HopfAlgebroid, LeftBialgebroid, RightBialgebroid, StarHopfAlgebroid
from .linalg import FinSpace, LinMap, Vec, axpy, unit
from .report import CheckReport
from .scalar import ONE


class UnsupportedAlgebroid(NotImplementedError):
    pass


def _delta_diag(sp: FinSpace) -> LinMap:
    n = sp.dim
    return LinMap(sp, FinSpace(n * n), [unit(i * n + i) for i in range(n)])


def convolution_algebroid(g: FiniteGroupoid) -> StarHopfAlgebroid:
    n, m = g.n_arrows, g.n_objects
    sp = FinSpace(g.arrows)
    # (u∗v)(γ) = Σ_{γ=γ₁γ₂} u(γ₁)v(γ₂), so δ_a ∗ δ_b = δ_{ab} when composable
    table = [[unit(g.comp[a, b]) if (a, b) in g.comp else {} for b in range(n)] for a in range(n)]
    one = {u: ONE for u in g.unit}
    H = Algebra(sp, table, one, f"C({g.name})")
    A = function_algebra(m)
    emb = LinMap(A.space, sp, [unit(g.unit[x]) for x in range(m)])
    delta = _delta_diag(sp)
    eps_l = LinMap(sp, A.space, [unit(g.tgt[a]) for a in range(n)])
    eps_r = LinMap(sp, A.space, [unit(g.src[a]) for a in range(n)])
    S = LinMap(sp, sp, [unit(g.inv[a]) for a in range(n)])
    star_H = LinMap(sp, sp, [unit(g.inv[a]) for a in range(n)], antilinear=True)
    H.star = star_H
    left = LeftBialgebroid(H, A, emb, emb, delta, eps_l, g.name)
    right = RightBialgebroid(H, A, emb, emb, delta, eps_r, g.name)
    core = HopfAlgebroid(left, right, S, g.name, {"groupoid": g})
    return StarHopfAlgebroid(core, star_H, A.star, A.star)


def enveloping_algebroid(a: Algebra) -> StarHopfAlgebroid:
    """H = A⊗A^op over A (left) and A^op (right), S(a⊗b) = b⊗a."""
    n = a.dim
    aop = opposite(a)
    H = tensor_algebra(a, aop)
    H.name = f"{a.name}^e"
    sp = H.space

    def e(i, j):
        return i * n + j

    one_a = a.unit
    s_l = LinMap(a.space, sp, [{e(i, j): c for j, c in one_a.items()} for i in range(n)])
    t_l = LinMap(a.space, sp, [{e(j, i): c for j, c in one_a.items()} for i in range(n)])
    d = n * n
    # Δ(x⊗y) = (x⊗1)⊗(1⊗y) in the plain tensor of H
    cols = []
    for i in range(n):
        for j in range(n):
            v: Vec = {}
            for k, c in one_a.items():
                for k2, c2 in one_a.items():
                    axpy(v, {e(i, k) * d + e(k2, j): ONE}, c * c2)
            cols.append(v)
    delta = LinMap(sp, FinSpace(d * d), cols)
    eps_l = LinMap(sp, a.space, [a.table[i][j] for i in range(n) for j in range(n)])
    eps_r = LinMap(sp, aop.space, [a.table[j][i] for i in range(n) for j in range(n)])
    S = LinMap(sp, sp, [unit(e(j, i)) for i in range(n) for j in range(n)])
    left = LeftBialgebroid(H, a, s_l, t_l, delta, eps_l, H.name)
    right = RightBialgebroid(H, aop, t_l, s_l, delta, eps_r, H.name)
    core = HopfAlgebroid(left, right, S, H.name)
    return StarHopfAlgebroid(core, H.star, a.star, a.star)


# ---------------------------------------------------------------- Connes-Moscovici

def _iterated_coproduct(q: Algebra) -> list[Vec]:
    """Δ²(e_k) as plain vectors of Q⊗Q⊗Q."""
    cop = q.hopf.coproduct
    n = q.dim
    return [tensor_apply([cop, None], cop.cols[k], [n, n], [n * n, n]) for k in range(n)]


def verify_module_algebra(q: Algebra, a: Algebra, act: list[LinMap], star: bool = False) -> CheckReport:
    rep = CheckReport(f"{q.name}-module algebra {a.name}".strip())
    nq, na = q.dim, a.dim
    cop, cou = q.hopf.coproduct, q.hopf.counit
    wit = None
    for x in range(nq):
        for y in range(nq):
            lhs = act[x] @ act[y]
            rhs = LinMap(a.space, a.space, [_act(act, q.table[x][y], {k: ONE}) for k in range(na)])
            if lhs != rhs:
                wit = f"({q.labels[x]}, {q.labels[y]})"
                break
        if wit:
            break
    rep.check("action-associative", "(qq')·a = q·(q'·a)", wit is None, wit)
    rep.check("action-unital", "1·a = a", _act_map(act, q.unit, a) == LinMap.identity(a.space))
    wit = None
    for x in range(nq):
        for i in range(na):
            for j in range(na):
                lhs = act[x](a.table[i][j])
                rhs: Vec = {}
                for k, c in cop.cols[x].items():
                    x1, x2 = divmod(k, nq)
                    axpy(rhs, a.mul(act[x1].cols[i], act[x2].cols[j]), c)
                if lhs != rhs:
                    wit = f"{q.labels[x]}·({a.labels[i]}{a.labels[j]})"
                    break
            if wit:
                break
        if wit:
            break
    rep.check("action-multiplicative", "q·(bb') = (q₁·b)(q₂·b')", wit is None, wit)
    wit = None
    for x in range(nq):
        want: Vec = {}
        for _, c in cou.cols[x].items():
            axpy(want, a.unit, c)
        if act[x](a.unit) != want:
            wit = q.labels[x]
            break
    rep.check("action-unit", "q·1 = ε(q)1", wit is None, wit)
    if star:
        T = q.hopf.antipode
        wit = None
        for x in range(nq):
            tq = q.star(T.cols[x])
            for i in range(na):
                if a.star(act[x].cols[i]) != _act(act, tq, a.star.cols[i]):
                    wit = f"({q.labels[x]}·{a.labels[i]})*"
                    break
            if wit:
                break
        rep.check("action-star", "(q·b)* = T(q)*·b*", wit is None, wit)
    return rep.done()


def _act(act: list[LinMap], qv: Vec, v: Vec) -> Vec:
    out: Vec = {}
    for k, c in qv.items():
        axpy(out, act[k](v), c)
    return out


def _act_map(act, qv, a):
    return LinMap(a.space, a.space, [_act(act, qv, {k: ONE}) for k in range(a.dim)])


def connes_moscovici(q: Algebra, a: Algebra, act: list[LinMap]) -> StarHopfAlgebroid:
    """H = A⊗Q⊗A for a Hopf *-algebra Q with T² = id acting on the *-algebra A."""
    if q.hopf is None:
        raise ValueError("Q carries no Hopf data")
    T = q.hopf.antipode
    if T @ T != LinMap.identity(q.space):
        raise UnsupportedAlgebroid("antipode with T² ≠ id: the twisted antipode variant is not implemented")
    has_star = q.star is not None and a.star is not None
    rep = verify_module_algebra(q, a, act, star=has_star)
    if not rep.ok:
        f = rep.failures()[0]
        raise ValueError(f"not a module algebra: {f.axiom} at {f.witness}")
    nq, na = q.dim, a.dim
    d = na * nq * na

    def e(i, k, j):
        return (i * nq + k) * na + j

    labels = [f"{a.labels[i]}⊗{q.labels[k]}⊗{a.labels[j]}" for i in range(na) for k in range(nq)
              for j in range(na)]
    sp = FinSpace(labels)
    d3 = _iterated_coproduct(q)
    cop, cou = q.hopf.coproduct, q.hopf.counit

    def sweedler3(k):
        for key, c in d3[k].items():
            r, q3 = divmod(key, nq)
            q1, q2 = divmod(r, nq)
            yield q1, q2, q3, c

    def mult(x, y):
        i, k, j = x
        i2, k2, j2 = y
        out: Vec = {}
        for q1, q2, q3, c in sweedler3(k):
            left = a.mul({i: ONE}, act[q1].cols[i2])
            mid = q.table[q2][k2]
            right = a.mul(act[q3].cols[j2], {j: ONE})
            for li, lc in left.items():
                for mk, mc in mid.items():
                    for rj, rc in right.items():
                        axpy(out, {e(li, mk, rj): ONE}, c * lc * mc * rc)
        return out

    idx = [(i, k, j) for i in range(na) for k in range(nq) for j in range(na)]
    table = [[mult(x, y) for y in idx] for x in idx]

    def embed(av: Vec, qv: Vec, bv: Vec) -> Vec:
        return {e(i, k, j): c1 * c2 * c3 for i, c1 in av.items() for k, c2 in qv.items()
                for j, c3 in bv.items()}

    one = embed(a.unit, q.unit, a.unit)
    H = Algebra(sp, table, one, f"CM({q.name},{a.name})")
    aop = opposite(a)
    s_l = LinMap(a.space, sp, [embed({i: ONE}, q.unit, a.unit) for i in range(na)])
    t_l = LinMap(a.space, sp, [embed(a.unit, q.unit, {i: ONE}) for i in range(na)])
    cols = []
    for i, k, j in idx:
        v: Vec = {}
        for key, c in cop.cols[k].items():
            q1, q2 = divmod(key, nq)
            x = embed({i: ONE}, {q1: ONE}, a.unit)
            y = embed(a.unit, {q2: ONE}, {j: ONE})
            for p, cp in x.items():
                for r, cr in y.items():
                    axpy(v, {p * d + r: ONE}, c * cp * cr)
        cols.append(v)
    delta = LinMap(sp, FinSpace(d * d), cols)
    eps_l, eps_r, S = [], [], []
    for i, k, j in idx:
        ek: Vec = {}
        for _, c in cou.cols[k].items():
            axpy(ek, a.table[i][j], c)
        eps_l.append(ek)
        eps_r.append(_act(act, T.cols[k], a.table[j][i]))
        s: Vec = {}
        for q1, q2, q3, c in sweedler3(k):
            x = _act(act, T.cols[q3], {j: ONE})
            y = _act(act, T.cols[q1], {i: ONE})
            axpy(s, embed(x, T.cols[q2], y), c)
        S.append(s)
    eps_l = LinMap(sp, a.space, eps_l)
    eps_r = LinMap(sp, aop.space, eps_r)
    S = LinMap(sp, sp, S)
    left = LeftBialgebroid(H, a, s_l, t_l, delta, eps_l, H.name)
    right = RightBialgebroid(H, aop, t_l, s_l, delta, eps_r, H.name)
    core = HopfAlgebroid(left, right, S, H.name, {"module-algebra": rep})
    if not has_star:
        return core
    # (a⊗q⊗b)* = (q*₁·a*) ⊗ q*₂ ⊗ (q*₃·b*)
    star = []
    for i, k, j in idx:
        v: Vec = {}
        qs = q.star.cols[k]
        for kk, cq in qs.items():
            for q1, q2, q3, c in sweedler3(kk):
                x = act[q1](a.star.cols[i])
                y = act[q3](a.star.cols[j])
                axpy(v, embed(x, {q2: ONE}, y), c * cq)
        star.append(v)
    star_H = LinMap(sp, sp, star, antilinear=True)
    H.star = star_H
    return StarHopfAlgebroid(core, star_H, a.star, a.star)


def swap_action(q: Algebra, n: int = 2) -> list[LinMap]:
    """Group algebra acting on C(n) through permutation of points, generator r1 swapping 0 and 1."""
    sp = FinSpace([f"δ{x}" for x in range(n)])
    out = []
    for lab in q.labels:
        if lab == "e":
            out.append(LinMap.identity(sp))
        else:
            p = [1, 0] + list(range(2, n))
            out.append(LinMap(sp, sp, [unit(p[x]) for x in range(n)]))
    return out


def permutation_action(q: Algebra, action: list[list[int]], n: int) -> list[LinMap]:
    """(g·f)(x) = f(g⁻¹x) on C(n): δ_x ↦ δ_{g x}."""
    sp = FinSpace([f"δ{x}" for x in range(n)])
    return [LinMap(sp, sp, [unit(action[g][x]) for x in range(n)]) for g in range(q.dim)]


# ---------------------------------------------------------------- isomorphisms

def check_isomorphism(h1, h2, phi: LinMap, base_l: LinMap, base_r: LinMap,
                      name: str = "isomorphism") -> CheckReport:
    """phi: H1 -> H2 with base maps A_l1 -> A_l2, A_r1 -> A_r2, commuting with all structure maps."""
    rep = CheckReport(name)
    c1 = h1.core if isinstance(h1, StarHopfAlgebroid) else h1
    c2 = h2.core if isinstance(h2, StarHopfAlgebroid) else h2
    H1, H2 = c1.H, c2.H
    rep.check("bijective", "φ is bijective", phi.is_bijective() and base_l.is_bijective()
              and base_r.is_bijective())
    wit = None
    for i in range(H1.dim):
        for j in range(H1.dim):
            if phi(H1.table[i][j]) != H2.mul(phi.cols[i], phi.cols[j]):
                wit = f"({H1.labels[i]}, {H1.labels[j]})"
                break
        if wit:
            break
    rep.check("multiplicative", "φ(hh') = φ(h)φ(h')", wit is None, wit)
    rep.check("unital", "φ(1) = 1", phi(H1.unit) == H2.unit)
    d1, d2 = H1.dim, H2.dim
    for side, b1, b2, base in (("left", c1.left, c2.left, base_l), ("right", c1.right, c2.right, base_r)):
        rep.check(f"{side}-source", "φ s = s φ_A", phi @ b1.s == b2.s @ base)
        rep.check(f"{side}-target", "φ t = t φ_A", phi @ b1.t == b2.t @ base)
        rep.check(f"{side}-counit", "φ_A ε = ε φ", base @ b1.eps == b2.eps @ phi)
        wit = None
        for i in range(d1):
            lhs = tensor_apply([phi, phi], b1.delta.cols[i], [d1, d1], [d2, d2])
            if not b2.tensor.equal(lhs, b2.delta(phi.cols[i])):
                wit = H1.labels[i]
                break
        rep.check(f"{side}-coproduct", "(φ⊗φ)Δ = Δφ", wit is None, wit)
    rep.check("antipode", "φ S = S φ", phi @ c1.S == c2.S @ phi)
    if isinstance(h1, StarHopfAlgebroid) and isinstance(h2, StarHopfAlgebroid):
        rep.check("star", "φ(h*) = φ(h)*", phi @ h1.star_H == h2.star_H @ phi)
    return rep.done()


def cm_enveloping_isomorphism(a: Algebra) -> CheckReport:
    from .algebra import group_algebra
    q = group_algebra([[0]], ["e"])
    cm = connes_moscovici(q, a, [LinMap.identity(a.space)])
    env = enveloping_algebroid(a)
    n = a.dim
    phi = LinMap(cm.H.space, env.H.space, [unit(i * n + j) for i in range(n) for j in range(n)])
    ida = LinMap.identity(a.space)
    return check_isomorphism(cm, env, phi, ida, ida, "CM(k, A) ≅ A⊗A^op")


def cm_hopf_isomorphism(q: Algebra) -> CheckReport:
    """CM(Q, k) against Q with its own Hopf data, seen as an algebroid over the ground field."""
    k = ground_field()
    cm = connes_moscovici(q, k, [LinMap.identity(k.space) for _ in range(q.dim)])
    hq = hopf_algebra_algebroid(q)
    phi = LinMap(cm.H.space, q.space, [unit(i) for i in range(q.dim)])
    idk = LinMap.identity(k.space)
    return check_isomorphism(cm, hq, phi, idk, idk, "CM(Q, k) ≅ Q")


def hopf_algebra_algebroid(q: Algebra) -> StarHopfAlgebroid:
    """A Hopf algebra as a Hopf algebroid over the ground field."""
    k = ground_field()
    emb = LinMap(k.space, q.space, [dict(q.unit)])
    hd = q.hopf
    left = LeftBialgebroid(q, k, emb, emb, hd.coproduct, hd.counit, q.name)
    right = RightBialgebroid(q, k, emb, emb, hd.coproduct, hd.counit, q.name)
    core = HopfAlgebroid(left, right, hd.antipode, q.name)
    if q.star is None:
        return core
    return StarHopfAlgebroid(core, q.star, k.star, k.star)


def relabel_isomorphism(g: FiniteGroupoid, perm) -> CheckReport:
    """The algebroid of g and of its relabeling are isomorphic through arrow identity and object perm."""
    h1 = convolution_algebroid(g)
    g2 = g.relabel(perm)
    h2 = convolution_algebroid(g2)
    phi = LinMap.identity(h1.H.space)
    m = g.n_objects
    base = LinMap(h1.left.A.space, h2.left.A.space, [unit(perm[x]) for x in range(m)])
    return check_isomorphism(h1, h2, phi, base, base, f"relabel {g.name}")
