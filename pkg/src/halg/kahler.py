"""Bigradings, complex/hermitian/Kähler structures, Lefschetz and Hodge operators, metrics and Laplacians."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import factorial
from typing import Callable

from .algebra import Algebra, group_by_name
from .calculus import (DGA, CovariantCalculus, GradedAlgebra, State, groupoid_calculus, invariant_forms,
                       restrict_dga, total_dimension, trivial_symmetry, volume_map)
from .constructors import convolution_algebroid
from .groupoid import point_groupoid
from .hopf import StarHopfAlgebroid
from .linalg import FinSpace, LinMap, Subspace, Vec, axpy, is_hermitian, psd_check, scale, span
from .report import CheckReport
from .scalar import I, ONE, ZERO, Scalar, i_power, sc


class BigradingError(ValueError):
    pass


class NotAlmostSymplectic(ValueError):
    pass


class HodgeError(ValueError):
    pass


class Bigrading:
    """Subspaces Ω^(a,b) of the form space, keyed by (a, b)."""

    def __init__(self, dga: DGA, components: dict):
        self.dga = dga
        self.components = {k: v for k, v in components.items() if v.dim}
        self._proj: dict | None = None

    @classmethod
    def from_basis(cls, dga: DGA, bideg) -> Bigrading:
        """bideg: list of (a, b) per basis vector, or dict label -> (a, b)."""
        if isinstance(bideg, dict):
            bideg = [tuple(bideg[lab]) for lab in dga.alg.labels]
        comps: dict = {}
        for i, ab in enumerate(bideg):
            comps.setdefault(tuple(ab), []).append({i: ONE})
        return cls(dga, {k: Subspace(dga.dim, v, _trusted=True) for k, v in comps.items()})

    def part(self, a: int, b: int) -> Subspace:
        return self.components.get((a, b), Subspace(self.dga.dim, []))

    def keys(self):
        return sorted(self.components)

    def projections(self) -> dict:
        if self._proj is None:
            basis, owner = [], []
            for k in self.keys():
                for v in self.components[k].basis:
                    basis.append(v)
                    owner.append(k)
            n = self.dga.dim
            M = LinMap(FinSpace(len(basis)), self.dga.alg.space, basis)
            if len(basis) != n or M.rank() != n:
                raise BigradingError("the components do not form a direct sum decomposition of Ω")
            coords = M.inverse()
            proj = {}
            for k in self.keys():
                idx = [p for p, o in enumerate(owner) if o == k]
                cols = []
                for j in range(n):
                    v: Vec = {}
                    for p, c in coords.cols[j].items():
                        if p in idx:
                            axpy(v, basis[p], c)
                    cols.append(v)
                proj[k] = LinMap(self.dga.alg.space, self.dga.alg.space, cols)
            self._proj = proj
        return self._proj

    def proj(self, a: int, b: int) -> LinMap:
        p = self.projections()
        return p.get((a, b), LinMap.zero(self.dga.alg.space, self.dga.alg.space))

    def bidegree(self, v: Vec):
        for k, sub_ in self.components.items():
            if sub_.contains(v):
                return k
        return None

    def restrict(self, r: DGA, omega0: Subspace) -> Bigrading:
        comps = {}
        for k, sub_ in self.components.items():
            part = sub_.intersect(omega0)
            comps[k] = Subspace(r.dim, [r.local(v) for v in part.basis])
        return Bigrading(r, comps)


def verify_bigrading(c: CovariantCalculus, bg: Bigrading) -> CheckReport:
    dga = c.dga
    A = dga.alg
    rep = CheckReport("bigrading")
    wit = None
    for (a, b), sub_ in bg.components.items():
        if not sub_ <= dga.graded.component(a + b):
            wit = f"Ω^({a},{b})"
            break
    rep.check("bigrading-degree", "Ω^(a,b) ⊆ Ω^(a+b)", wit is None, wit)
    wit = None
    for k in range(dga.graded.top + 1):
        parts = [s for (a, b), s in bg.components.items() if a + b == k]
        total = sum(s.dim for s in parts)
        joined = span([v for s in parts for v in s.basis], dga.dim)
        if total != dga.graded.component(k).dim or joined != dga.graded.component(k):
            wit = f"degree {k}"
            break
    rep.check("bigrading-direct-sum", "Ωⁿ = ⊕_{a+b=n} Ω^(a,b)", wit is None, wit)
    wit = None
    for (a, b), s in bg.components.items():
        for (p, q), t in bg.components.items():
            target = bg.part(a + p, b + q)
            if any(not target.contains(A.mul(u, v)) for u in s.basis for v in t.basis):
                wit = f"Ω^({a},{b}) ∧ Ω^({p},{q})"
                break
        if wit:
            break
    rep.check("bigrading-algebra", "Ω^(a,b) ∧ Ω^(c,d) ⊆ Ω^(a+c,b+d)", wit is None, wit)
    if dga.star is not None:
        wit = None
        for (a, b), s in bg.components.items():
            img = span([dga.star(v) for v in s.basis], dga.dim)
            if img != bg.part(b, a):
                wit = f"Ω^({a},{b})"
                break
        rep.check("bigrading-star", "(Ω^(a,b))* = Ω^(b,a)", wit is None, wit)
    if c.module is not None:
        m = c.module
        wit = None
        for (a, b), s in bg.components.items():
            for h in range(m.H.dim):
                if any(not s.contains(m.act[h](v)) for v in s.basis):
                    wit = f"{m.H.labels[h]} on Ω^({a},{b})"
                    break
            if wit:
                break
        rep.check("bigrading-H-invariant", "the action preserves each Ω^(a,b)", wit is None, wit)
    return rep.done()


@dataclass
class Dolbeault:
    delta: LinMap       # ∂
    delta_bar: LinMap   # ∂̄
    split: bool         # d = ∂ + ∂̄
    double_complex: bool


def split_d(c: CovariantCalculus, bg: Bigrading) -> Dolbeault:
    dga = c.dga
    sp = dga.alg.space
    d = dga.d
    dl = LinMap.zero(sp, sp)
    db = LinMap.zero(sp, sp)
    for (a, b) in bg.keys():
        p = bg.proj(a, b)
        dl = dl + bg.proj(a + 1, b) @ d @ p
        db = db + bg.proj(a, b + 1) @ d @ p
    split = (dl + db) == d
    dc = (dl @ dl).is_zero() and (db @ db).is_zero() and (dl @ db + db @ dl).is_zero()
    return Dolbeault(dl, db, split, dc)


def _commutes_with_h0(c: CovariantCalculus, op: LinMap) -> str | None:
    if c.module is None:
        return None
    L, m = c.left, c.module
    for v in c.h0.basis:
        act = m.action(v)
        e = L.eps(v)
        for f in (L.s, L.t):
            corr = act - m.action(f(e))
            if not (corr @ op - op @ corr).is_zero():
                return L.H.show(v)
    return None


def verify_complex_structure(c: CovariantCalculus, bg: Bigrading, restrict: bool = True) -> CheckReport:
    rep = CheckReport(f"complex structure {c.name}".strip())
    rep.extend(verify_bigrading(c, bg))
    try:
        dol = split_d(c, bg)
    except BigradingError as e:
        rep.check("bigrading-projections", "projections onto Ω^(a,b) exist", False, str(e))
        return rep.done()
    rep.check("integrable-split", "d = ∂ + ∂̄", dol.split)
    rep.check("integrable-double-complex", "∂² = ∂̄² = 0 and ∂∂̄ = −∂̄∂", dol.double_complex)
    rep.check("integrability-equivalence", "the two integrability conditions agree",
              dol.split == dol.double_complex)
    st = c.dga.star
    if st is not None:
        ok = st @ dol.delta_bar == dol.delta @ st and st @ dol.delta == dol.delta_bar @ st
        rep.check("dolbeault-star", "∂(ω*) = (∂̄ω)* and ∂̄(ω*) = (∂ω)*", ok)
    if c.module is not None:
        w = _commutes_with_h0(c, dol.delta) or _commutes_with_h0(c, dol.delta_bar)
        rep.check("dolbeault-covariant", "H₀ commutes with ∂ and ∂̄ up to the counit terms", w is None, w)
        if restrict and rep.ok:
            omega0, _ = invariant_forms(c)
            r = restrict_dga(c.dga, omega0)
            rc = trivial_symmetry(r, f"invariant part of {c.name}")
            rep.extend(verify_complex_structure(rc, bg.restrict(r, omega0), restrict=False), "invariant")
    return rep.done()


# ---------------------------------------------------------------- Lefschetz

@dataclass
class Lefschetz:
    L: LinMap
    n: int
    powers: list            # powers[j] = L^j
    primitives: dict        # k -> Subspace P^k


def _restricted_rank(f: LinMap, src: list[int]) -> int:
    return LinMap(FinSpace(len(src)), f.codomain, [f.cols[i] for i in src]).rank()


def lefschetz(c: CovariantCalculus, sigma: Vec) -> Lefschetz:
    dga = c.dga
    A = dga.alg
    N = total_dimension(dga)
    if N % 2:
        raise NotAlmostSymplectic(f"total dimension {N} is odd")
    n = N // 2
    L = A.left_mult(sigma)
    powers = [LinMap.identity(A.space)]
    for _ in range(N + 1):
        powers.append(L @ powers[-1])
    for k in range(n):
        src = dga.graded.indices(k)
        tgt = dga.graded.indices(2 * n - k)
        if len(src) != len(tgt) or _restricted_rank(powers[n - k], src) != len(src):
            raise NotAlmostSymplectic(f"L^{n - k} : Ω^{k} → Ω^{2 * n - k} is not bijective (k = {k})")
    prims = {}
    for k in range(N + 1):
        comp = dga.graded.component(k)
        if k > n:
            prims[k] = Subspace(dga.dim, [])
            continue
        Lp = powers[n - k + 1]
        src = comp.basis
        f = LinMap(FinSpace(len(src)), A.space, [Lp(v) for v in src])
        from .linalg import kernel
        ker = kernel(f)
        prims[k] = Subspace(dga.dim, [_combo(src, v) for v in ker.basis])
    return Lefschetz(L, n, powers, prims)


def _combo(basis, coeffs: Vec) -> Vec:
    out: Vec = {}
    for i, c in coeffs.items():
        axpy(out, basis[i], c)
    return out


@dataclass
class HermitianData:
    c: CovariantCalculus
    bg: Bigrading
    sigma: Vec
    lef: Lefschetz
    vol: LinMap | None = None
    tau: State | None = None
    prim_bideg: dict = field(default_factory=dict)
    hodge: LinMap | None = None
    dol: Dolbeault | None = None

    @property
    def n(self) -> int:
        return self.lef.n

    @property
    def L(self) -> LinMap:
        return self.lef.L


def hermitian_data(c: CovariantCalculus, bg: Bigrading, sigma: Vec, vol: LinMap | None = None,
                   tau: State | None = None) -> HermitianData:
    lef = lefschetz(c, sigma)
    pb = {}
    for (a, b), sub_ in bg.components.items():
        p = lef.primitives.get(a + b)
        if p is not None and p.dim:
            inter = p.intersect(sub_)
            if inter.dim:
                pb[(a, b)] = inter
    hd = HermitianData(c, bg, sigma, lef, vol, tau, pb, dol=split_d(c, bg))
    hd.hodge = hodge_star(hd)
    return hd


def hodge_star(hd: HermitianData) -> LinMap:
    """⋆(Lʲω) = (−1)^{k(k+1)/2} i^{a−b} j!/(n−j−k)! L^{n−j−k}ω for ω ∈ P^(a,b) ⊆ Pᵏ."""
    dga = hd.c.dga
    n, P = hd.n, hd.lef.powers
    for k, p in hd.lef.primitives.items():
        total = sum(s.dim for (a, b), s in hd.prim_bideg.items() if a + b == k)
        if total != p.dim:
            raise HodgeError(f"P^{k} is not the direct sum of its bidegree parts")
    dom, img = [], []
    for (a, b), sub_ in sorted(hd.prim_bideg.items()):
        k = a + b
        sign = ONE if (k * (k + 1) // 2) % 2 == 0 else -ONE
        for w in sub_.basis:
            for j in range(n - k + 1):
                coef = sign * i_power(a - b) * Scalar(factorial(j)) * Scalar(factorial(n - j - k)).inverse()
                dom.append(P[j](w))
                img.append(scale(P[n - j - k](w), coef))
    D = LinMap(FinSpace(len(dom)), dga.alg.space, dom)
    if len(dom) != dga.dim or D.rank() != dga.dim:
        raise HodgeError("the Lefschetz decomposition is not a direct sum decomposition of Ω")
    return LinMap(FinSpace(len(dom)), dga.alg.space, img) @ D.inverse()


def _decomposition(hd: HermitianData) -> list[tuple[int, int, Subspace]]:
    """(k, j, Lʲ(P^{k−2j})) pieces."""
    out = []
    dga = hd.c.dga
    for k in range(dga.graded.top + 1):
        for j in range(k // 2 + 1):
            p = hd.lef.primitives.get(k - 2 * j)
            if p is None or not p.dim:
                continue
            piece = span([hd.lef.powers[j](v) for v in p.basis], dga.dim)
            if piece.dim:
                out.append((k, j, piece))
    return out


def verify_hermitian(c: CovariantCalculus, bg: Bigrading, sigma: Vec, restrict: bool = True) -> CheckReport:
    rep = CheckReport(f"hermitian structure {c.name}".strip())
    rep.extend(verify_complex_structure(c, bg, restrict=restrict), "complex")
    dga = c.dga
    A = dga.alg
    rep.check("sigma-bidegree", "σ ∈ Ω^(1,1)", bg.part(1, 1).contains(sigma) and bool(sigma))
    wit = next((A.labels[i] for i in range(dga.dim) if A.mul(sigma, {i: ONE}) != A.mul({i: ONE}, sigma)), None)
    rep.check("sigma-central", "σ∧ω = ω∧σ for all ω", wit is None, wit)
    if dga.star is not None:
        rep.check("sigma-real", "σ* = σ", dga.star(sigma) == sigma)
    if c.module is not None:
        L, m = c.left, c.module
        wit = next((L.H.labels[h] for h in range(L.H.dim)
                    if m.act[h](sigma) != m.apply(L.s(L.eps.cols[h]), sigma)), None)
        rep.check("sigma-invariant", "h·σ = s_lε_l(h)·σ", wit is None, wit)
    try:
        hd = hermitian_data(c, bg, sigma)
    except NotAlmostSymplectic as e:
        rep.check("lefschetz-isomorphisms", "Lⁿ⁻ᵏ : Ωᵏ → Ω²ⁿ⁻ᵏ bijective for k < n", False,
                  f"not almost symplectic: {e}")
        return rep.done()
    except HodgeError as e:
        rep.check("lefschetz-isomorphisms", "Lⁿ⁻ᵏ : Ωᵏ → Ω²ⁿ⁻ᵏ bijective for k < n", True)
        rep.check("lefschetz-decomposition", "Ωᵏ = ⊕ Lʲ(Pᵏ⁻²ʲ)", False, str(e))
        return rep.done()
    rep.check("lefschetz-isomorphisms", "Lⁿ⁻ᵏ : Ωᵏ → Ω²ⁿ⁻ᵏ bijective for k < n", True)
    n = hd.n
    rep.info["n"] = n
    wit = next((f"Ω^({a},{b})" for (a, b) in bg.keys() if a > n or b > n), None)
    rep.check("diamond-type", "Ω^(a,b) = 0 when a > n or b > n", wit is None, wit)
    pieces = _decomposition(hd)
    wit = None
    for k in range(dga.graded.top + 1):
        ps = [s for kk, _, s in pieces if kk == k]
        if sum(s.dim for s in ps) != dga.graded.component(k).dim:
            wit = f"degree {k}"
            break
    rep.check("lefschetz-decomposition", "Ωᵏ = ⊕ Lʲ(Pᵏ⁻²ʲ)", wit is None, wit)
    rep.info["primitive dims"] = {k: p.dim for k, p in hd.lef.primitives.items()}
    Lm = hd.L
    zero = dga.graded.indices(0)
    ok = all(Lm(A.mul({b: ONE}, {i: ONE})) == A.mul({b: ONE}, Lm.cols[i]) and
             Lm(A.mul({i: ONE}, {b: ONE})) == A.mul(Lm.cols[i], {b: ONE}) for b in zero for i in range(dga.dim))
    rep.check("lefschetz-bimodule", "L is a (B,B)-bimodule map", ok)
    if dga.star is not None:
        rep.check("lefschetz-star", "L(ω*) = (Lω)*", Lm @ dga.star == dga.star @ Lm)
    if c.module is not None:
        m = c.module
        wit = next((m.H.labels[h] for h in range(m.H.dim) if Lm @ m.act[h] != m.act[h] @ Lm), None)
        rep.check("lefschetz-H-linear", "L(h·ω) = h·L(ω)", wit is None, wit)
    rep.extend(verify_hodge(hd), "hodge")
    return rep.done()


def verify_hodge(hd: HermitianData) -> CheckReport:
    rep = CheckReport("Hodge map")
    c, st = hd.c, hd.hodge
    dga = c.dga
    sp = dga.alg.space
    sign = LinMap(sp, sp, [{i: ONE if dga.graded.degree[i] % 2 == 0 else -ONE} for i in range(dga.dim)])
    rep.check("hodge-square", "⋆² = (−1)ᵏ on Ωᵏ", st @ st == sign)
    rep.check("hodge-bijective", "⋆ is an isomorphism", st.is_bijective())
    n = hd.n
    wit = None
    for (a, b), s in hd.bg.components.items():
        if span([st(v) for v in s.basis], dga.dim) != hd.bg.part(n - b, n - a):
            wit = f"Ω^({a},{b})"
            break
    rep.check("hodge-bidegree", "⋆(Ω^(a,b)) = Ω^(n−b,n−a)", wit is None, wit)
    if dga.star is not None:
        f, g = st @ dga.star, dga.star @ st
        j = f.first_difference(g)
        rep.check("hodge-star-preserving", "⋆(ω*) = (⋆ω)*", f == g,
                  None if f == g else f"ω = {dga.alg.labels[j]}: {dga.alg.show(f.cols[j])} vs {dga.alg.show(g.cols[j])}"
                  if j is not None else "linearity differs")
    if c.module is not None:
        m = c.module
        wit = next((m.H.labels[h] for h in range(m.H.dim) if st @ m.act[h] != m.act[h] @ st), None)
        rep.check("hodge-H-linear", "⋆(h·ω) = h·⋆(ω)", wit is None, wit)
    return rep.done()


# ---------------------------------------------------------------- metric and inner product

@dataclass
class Metric:
    g: Callable[[Vec, Vec], Vec]
    inner: Callable[[Vec, Vec], Scalar]
    gram: list


def metric_and_inner_product(hd: HermitianData) -> tuple[Metric, CheckReport]:
    c = hd.c
    dga = c.dga
    A, deg, st = dga.alg, dga.graded.degree, hd.hodge
    vol, tau = hd.vol, hd.tau
    rep = CheckReport("metric")
    if vol is None or tau is None:
        rep.check("orientation-configured", "vol and τ are supplied", False)
        return None, rep.done()
    n = dga.dim
    gb = [[vol(A.mul({i: ONE}, st(dga.star.cols[j]))) if deg[i] == deg[j] else {} for j in range(n)]
          for i in range(n)]

    def g(u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        for i, x in u.items():
            for j, y in v.items():
                if gb[i][j]:
                    axpy(out, gb[i][j], x * y.conj())
        return out

    gram = [[tau(gb[i][j]) for j in range(n)] for i in range(n)]

    def inner(u: Vec, v: Vec) -> Scalar:
        out = ZERO
        for i, x in u.items():
            for j, y in v.items():
                if gram[i][j]:
                    out = out + x * y.conj() * gram[i][j]
        return out

    met = Metric(g, inner, gram)
    herm = is_hermitian(gram)
    rep.check("gram-hermitian", "⟨ω,η⟩ = conj ⟨η,ω⟩", herm)
    pd = herm and psd_check(gram)
    rep.check("positive-definite", "the Gram matrix of ⟨,⟩ is positive definite", pd,
              "hermitian structure not positive definite")
    wit = None
    for i in range(n):
        for j in range(n):
            if g({i: ONE}, {j: ONE}) != dga.star(g({j: ONE}, {i: ONE})):
                wit = f"({A.labels[i]}, {A.labels[j]})"
                break
        if wit:
            break
    rep.check("metric-symmetry", "g(ω⊗η̄) = g(η⊗ω̄)*", wit is None, wit)
    if isinstance(c.h, StarHopfAlgebroid) and c.module is not None:
        rep.check("metric-covariant", "g(h₁·ω ⊗ h₂·η̄) = h·g(ω⊗η̄)", _metric_covariance(hd, g) is None,
                  _metric_covariance(hd, g))

    def orth(pieces) -> str | None:
        for p, (ka, sa) in enumerate(pieces):
            for q, (kb, sb) in enumerate(pieces):
                if p != q and any(inner(u, v) for u in sa.basis for v in sb.basis):
                    return f"{ka} vs {kb}"
        return None

    degs = [(f"Ω^{k}", dga.graded.component(k)) for k in range(dga.graded.top + 1)]
    w = orth(degs)
    rep.check("orthogonal-degree", "Ωᵏ ⟂ Ωˡ for k ≠ l", w is None, w)
    bid = [(f"Ω^{k}", s) for k, s in hd.bg.components.items()]
    w = orth(bid)
    rep.check("orthogonal-bidegree", "Ω^(a,b) ⟂ Ω^(c,d) for different bidegrees", w is None, w)
    lef = [(f"L^{j}P^{k - 2 * j}", s) for k, j, s in _decomposition(hd)]
    w = orth(lef)
    rep.check("orthogonal-lefschetz", "the Lefschetz pieces are mutually orthogonal", w is None, w)
    return met, rep.done()


def _metric_covariance(hd: HermitianData, g) -> str | None:
    c = hd.c
    sh, m = c.h, c.module
    core = sh.core
    H = core.H
    d = H.dim
    delta = core.left.delta
    base = range(c.dga.dim)
    zero = c.dga.graded.indices(0)
    for h in range(d):
        # h acts on B = Ω⁰ through the module restricted to degree zero
        for i in base:
            for j in base:
                if c.dga.graded.degree[i] != c.dga.graded.degree[j]:
                    continue
                lhs: Vec = {}
                for key, coef in delta.cols[h].items():
                    h1, h2 = divmod(key, d)
                    u = m.act[h1].cols[i]
                    v = m.action(sh.star_H(core.S.cols[h2]))({j: ONE})
                    axpy(lhs, g(u, v), coef)
                rhs = m.act[h](g({i: ONE}, {j: ONE}))
                if any(k not in zero for k in rhs):
                    return "g leaves Ω⁰"
                if lhs != rhs:
                    return f"h = {H.labels[h]}, ω = {c.dga.alg.labels[i]}, η = {c.dga.alg.labels[j]}"
    return None


# ---------------------------------------------------------------- codifferentials and Laplacians

@dataclass
class Laplacians:
    d_star: LinMap
    delta_star: LinMap
    delta_bar_star: LinMap
    lap_d: LinMap
    lap_delta: LinMap
    lap_delta_bar: LinMap


def laplacians(hd: HermitianData, met: Metric | None = None) -> tuple[Laplacians, CheckReport]:
    c = hd.c
    dga = c.dga
    st, d, dol = hd.hodge, dga.d, hd.dol
    rep = CheckReport("Laplacians")
    ds = -(st @ d @ st)
    dls = -(st @ dol.delta_bar @ st)
    dbs = -(st @ dol.delta @ st)

    def sq(x):
        return x @ x
    lap = Laplacians(ds, dls, dbs, sq(d + ds), sq(dol.delta + dls), sq(dol.delta_bar + dbs))
    if met is None:
        met, _ = metric_and_inner_product(hd)
    if met is None:
        rep.check("inner-product", "an inner product is available", False)
        return lap, rep.done()
    inner = met.inner
    n = dga.dim
    A = dga.alg

    def adjoint(x: LinMap, y: LinMap) -> str | None:
        for i in range(n):
            for j in range(n):
                if inner(x.cols[i], {j: ONE}) != inner({i: ONE}, y.cols[j]):
                    return f"({A.labels[i]}, {A.labels[j]})"
        return None

    for name, op, adj in (("d", d, ds), ("del", dol.delta, dls), ("delbar", dol.delta_bar, dbs)):
        w = adjoint(op, adj)
        rep.check(f"adjoint-{name}", f"⟨{name}ω, η⟩ = ⟨ω, {name}*η⟩", w is None, w)
    for name, op in (("d", lap.lap_d), ("del", lap.lap_delta), ("delbar", lap.lap_delta_bar)):
        w = adjoint(op, op)
        rep.check(f"laplacian-symmetric-{name}", f"Δ_{name} is symmetric", w is None, w)
    wit = None
    for i in range(n):
        for j in range(n):
            if inner(st.cols[i], st.cols[j]) != inner({i: ONE}, {j: ONE}):
                wit = f"({A.labels[i]}, {A.labels[j]})"
                break
        if wit:
            break
    rep.check("hodge-unitary", "⟨⋆ω, ⋆η⟩ = ⟨ω, η⟩", wit is None, wit)
    if dga.star is not None:
        s = dga.star
        rep.check("codifferential-star-d", "d*(ω*) = (d*ω)*", ds @ s == s @ ds)
        rep.check("codifferential-star-del", "∂*(ω*) = (∂̄*ω)*", dls @ s == s @ dbs)
        rep.check("codifferential-star-delbar", "∂̄*(ω*) = (∂*ω)*", dbs @ s == s @ dls)
    if c.module is not None:
        w = _commutes_with_h0(c, ds)
        rep.check("codifferential-descends", "H₀ commutes with d* up to the counit terms", w is None, w)
        w = next((x for x in (_commutes_with_h0(c, op) for op in (lap.lap_d, lap.lap_delta, lap.lap_delta_bar))
                  if x is not None), None)
        rep.check("laplacians-descend", "H₀ commutes with the three Laplacians up to the counit terms", w is None, w)
        omega0, _ = invariant_forms(c)
        ok = all(omega0.contains(op(v)) for op in (ds, lap.lap_d, lap.lap_delta, lap.lap_delta_bar)
                 for v in omega0.basis)
        rep.check("laplacians-preserve-invariants", "d* and the Laplacians map Ω₀ into Ω₀", ok)
    return lap, rep.done()


# ---------------------------------------------------------------- Kähler

def kahler_check(hd: HermitianData, restrict: bool = True) -> CheckReport:
    c = hd.c
    rep = CheckReport(f"Kähler structure {c.name}".strip())
    rep.check("kahler-form-closed", "dκ = 0", not c.dga.d(hd.sigma), c.dga.alg.show(c.dga.d(hd.sigma)))
    if restrict and c.module is not None:
        rep.extend(restrict_kahler(hd), "invariant")
    return rep.done()


def kahler_suite(c: CovariantCalculus, bg: Bigrading, sigma: Vec, vol: LinMap, tau: State,
                 restrict: bool = True) -> CheckReport:
    """Every check of this module on one fixture, with the restriction to Ω₀ when a symmetry acts."""
    from .calculus import orientation_tools
    rep = CheckReport(f"Kähler suite {c.name}".strip())
    rep.extend(orientation_tools(c, vol, tau, restrict=False), "orientation")
    herm = verify_hermitian(c, bg, sigma, restrict=False)
    rep.extend(herm, "hermitian")
    if not herm.ok:
        return rep.done()
    hd = hermitian_data(c, bg, sigma, vol, tau)
    met, mrep = metric_and_inner_product(hd)
    rep.extend(mrep, "metric")
    if met is not None and mrep.ok:
        _, lrep = laplacians(hd, met)
        rep.extend(lrep, "laplacian")
    rep.extend(kahler_check(hd, restrict=False), "kahler")
    if restrict and c.module is not None:
        rep.extend(restrict_kahler(hd), "invariant")
    return rep.done()


def restrict_kahler(hd: HermitianData) -> CheckReport:
    """Re-run the suite on Ω₀ with σ, vol and τ restricted."""
    c = hd.c
    omega0, irep = invariant_forms(c)
    rep = CheckReport("restriction to invariant forms")
    rep.check("sigma-invariant-form", "σ ∈ Ω₀", omega0.contains(hd.sigma))
    if not rep.ok:
        return rep.done()
    r = restrict_dga(c.dga, omega0)
    rc = trivial_symmetry(r, f"invariant part of {c.name}")
    bg = hd.bg.restrict(r, omega0)
    sigma = r.local(hd.sigma)
    vol = LinMap(r.alg.space, r.alg.space, [r.local(hd.vol(r.embedding.cols[i])) for i in range(r.dim)]) \
        if hd.vol is not None else None
    tau = hd.tau.restrict(r.embedding) if hd.tau is not None else None
    rep.info["invariant dims"] = r.graded.dims()
    rep.extend(kahler_suite(rc, bg, sigma, vol, tau, restrict=False))
    # the restricted inner product is the restriction of the original one
    if vol is not None and tau is not None and rep.ok:
        full, _ = metric_and_inner_product(hd)
        sub_hd = hermitian_data(rc, bg, sigma, vol, tau)
        part, _ = metric_and_inner_product(sub_hd)
        E = r.embedding
        ok = all(part.inner({i: ONE}, {j: ONE}) == full.inner(E.cols[i], E.cols[j])
                 for i in range(r.dim) for j in range(r.dim))
        rep.check("inner-product-restricts", "the inner product on Ω₀ is the restriction of ⟨,⟩", ok)
    return rep.done()


# ---------------------------------------------------------------- exterior algebras and fixtures

def exterior_calculus(gens: list[str], d_gen: dict, star_gen: dict, name: str = "") -> DGA:
    """Grassmann algebra on 1-form generators over the ground field.

    d_gen[g] and star_gen[g] give dg and g* as {monomial label: scalar}; monomials are
    generator names joined by '∧' in generator order, '1' for the unit.
    """
    k = len(gens)
    monos = [()]
    for r in range(1, k + 1):
        monos.extend(combinations(range(k), r))
    labels = ["1" if not m else "∧".join(gens[i] for i in m) for m in monos]
    idx = {m: i for i, m in enumerate(monos)}
    sp = FinSpace(labels)
    N = len(monos)

    def mono_mul(a, b):
        if set(a) & set(b):
            return None, 0
        seq = list(a) + list(b)
        inv = sum(1 for x in range(len(seq)) for y in range(x + 1, len(seq)) if seq[x] > seq[y])
        return tuple(sorted(seq)), (-1) ** inv

    table = [[{} for _ in range(N)] for _ in range(N)]
    for i, a in enumerate(monos):
        for j, b in enumerate(monos):
            m, s = mono_mul(a, b)
            if m is not None:
                table[i][j] = {idx[m]: ONE if s > 0 else -ONE}
    alg = Algebra(sp, table, {0: ONE}, name or "exterior")

    def vec_of(dct):
        return {sp.index(lab): sc(x) for lab, x in dct.items() if sc(x)}

    dg = [vec_of(d_gen.get(g, {})) for g in gens]
    sg = [vec_of(star_gen[g]) for g in gens]
    dcols, scols = [], []
    for m in monos:
        # d(g_{i1} … g_{ik}) = Σ_p (−1)^p g_{i1} … dg_{ip} … g_{ik}
        v: Vec = {}
        for p, gi in enumerate(m):
            left = {idx[m[:p]]: ONE}
            right = {idx[m[p + 1:]]: ONE}
            axpy(v, alg.mul(alg.mul(left, dg[gi]), right), ONE if p % 2 == 0 else -ONE)
        dcols.append(v)
        # (g_{i1} … g_{ik})* = (−1)^{k(k−1)/2} g_{ik}* … g_{i1}*
        w = {0: ONE}
        for gi in reversed(m):
            w = alg.mul(w, sg[gi])
        kk = len(m)
        scols.append(scale(w, ONE if (kk * (kk - 1) // 2) % 2 == 0 else -ONE))
    # the antilinear extension needs the columns as images of basis vectors, which they are
    star = LinMap(sp, sp, scols, antilinear=True)
    alg.star = star
    return DGA(GradedAlgebra(alg, [len(m) for m in monos]), LinMap(sp, sp, dcols), star, name)


def _point_group_calculus(dga: DGA, gname: str, act) -> CovariantCalculus:
    names, table = group_by_name(gname)
    h = convolution_algebroid(point_groupoid(names, table, f"point:{gname}"))
    from .actions import HModule
    return CovariantCalculus(dga, h, HModule(h, dga.alg.space, act(names), "forms"), name=dga.name)


@dataclass
class KahlerFixture:
    c: CovariantCalculus
    bg: Bigrading
    sigma: Vec
    vol: LinMap
    tau: State
    name: str = ""

    def suite(self, restrict: bool = True) -> CheckReport:
        return kahler_suite(self.c, self.bg, self.sigma, self.vol, self.tau, restrict)

    def hermitian(self) -> HermitianData:
        return hermitian_data(self.c, self.bg, self.sigma, self.vol, self.tau)


def toy_kahler() -> KahlerFixture:
    """Point Kähler cell: B = ground field, one (1,0) and one (0,1) generator, d = 0, κ = i e10∧e01.

    ℤ/2 acts by −1 in degree one.
    """
    dga = exterior_calculus(["e10", "e01"], {}, {"e10": {"e01": 1}, "e01": {"e10": 1}}, "toy Kähler cell")
    sp = dga.alg.space

    def act(names):
        flip = LinMap(sp, sp, [{i: ONE if dga.graded.degree[i] % 2 == 0 else -ONE} for i in range(dga.dim)])
        return [LinMap.identity(sp) if nm == "e" else flip for nm in names]

    c = _point_group_calculus(dga, "Z2", act)
    bg = Bigrading.from_basis(dga, {"1": (0, 0), "e10": (1, 0), "e01": (0, 1), "e10∧e01": (1, 1)})
    sigma = {sp.index("e10∧e01"): I}
    # vol(κ) = 1
    vol = volume_map(dga, {"e10∧e01": {0: -I}})
    tau = State.from_weights(dga, {"1": 1})
    return KahlerFixture(c, bg, sigma, vol, tau, "toykahler")


def kodaira_thurston() -> KahlerFixture:
    """Four generators ω1, ω̄1, ω2, ω̄2 with dω2 = −½ ω1∧ω̄1: hermitian, and dσ ≠ 0."""
    gens = ["w1", "v1", "w2", "v2"]   # v stands for the conjugate generator
    half = Scalar(1, 0) * Scalar(2).inverse()
    dga = exterior_calculus(gens, {"w2": {"w1∧v1": -half}, "v2": {"w1∧v1": half}},
                            {"w1": {"v1": 1}, "v1": {"w1": 1}, "w2": {"v2": 1}, "v2": {"w2": 1}},
                            "Kodaira-Thurston type")
    sp = dga.alg.space
    bideg = []
    for lab in sp.labels:
        parts = [] if lab == "1" else lab.split("∧")
        bideg.append((sum(p.startswith("w") for p in parts), sum(p.startswith("v") for p in parts)))
    bg = Bigrading.from_basis(dga, bideg)
    c = trivial_symmetry(dga)
    sigma = {sp.index("w1∧v1"): I, sp.index("w2∧v2"): I}
    # σ∧σ/2 = −w1∧v1∧w2∧v2 gets volume 1
    vol = volume_map(dga, {"w1∧v1∧w2∧v2": {0: -ONE}})
    tau = State.from_weights(dga, {"1": 1})
    return KahlerFixture(c, bg, sigma, vol, tau, "kodaira-thurston")


def laplacian_fixture() -> KahlerFixture:
    """Universal calculus on two points up to degree 2 with the unit groupoid acting."""
    c, _, _ = groupoid_calculus("unit:2", 2)
    dga = c.dga
    sp = dga.alg.space
    bg = Bigrading.from_basis(dga, {"e0": (0, 0), "e1": (0, 0), "e01": (1, 0), "e10": (0, 1),
                                    "e010": (1, 1), "e101": (1, 1)})
    sigma = {sp.index("e010"): -I, sp.index("e101"): I}
    vol = volume_map(dga, {"e010": {sp.index("e0"): I}, "e101": {sp.index("e1"): -I}})
    half = Scalar(1) * Scalar(2).inverse()
    tau = State.from_weights(dga, {"e0": half, "e1": half})
    return KahlerFixture(c, bg, sigma, vol, tau, "laplacian")


def kahler_fixture(name: str) -> KahlerFixture:
    return {"toykahler": toy_kahler, "kodaira-thurston": kodaira_thurston,
            "laplacian": laplacian_fixture}[name]()


__all__ = ["Bigrading", "BigradingError", "Dolbeault", "HermitianData", "HodgeError", "KahlerFixture",
           "Laplacians", "Lefschetz", "Metric", "NotAlmostSymplectic", "exterior_calculus", "hermitian_data",
           "hodge_star", "kahler_check", "kahler_fixture", "kahler_suite", "kodaira_thurston", "laplacian_fixture",
           "laplacians", "lefschetz", "metric_and_inner_product", "restrict_kahler", "split_d", "toy_kahler",
           "verify_bigrading", "verify_complex_structure", "verify_hermitian", "verify_hodge"]
