"""Modules and module algebras over Hopf algebroids, invariants, conjugates and the adjoint relation."""

from __future__ import annotations

from typing import Sequence

from .algebra import Algebra
from .bimodule import BalancedTensor, Bimodule, descends, tensor_apply
from .groupoid import FiniteGroupoid
from .hopf import HopfAlgebroid, StarHopfAlgebroid
from .linalg import FinSpace, LinMap, Subspace, Vec, axpy, conj, kernel
from .report import CheckReport
from .scalar import ONE


def _core(h) -> HopfAlgebroid:
    return h.core if isinstance(h, StarHopfAlgebroid) else h


class HModule:
    """Left module over the algebra H: one action matrix per basis element of H."""

    def __init__(self, h, space: FinSpace, act: Sequence[LinMap], name: str = ""):
        self.h = h
        self.space = space
        self.act = list(act)
        self.name = name
        if len(self.act) != _core(h).H.dim:
            raise ValueError("one action matrix per basis element of H")

    @property
    def H(self) -> Algebra:
        return _core(self.h).H

    @property
    def dim(self) -> int:
        return self.space.dim

    def action(self, hv: Vec) -> LinMap:
        out = LinMap.zero(self.space, self.space)
        for i, c in hv.items():
            out = out + self.act[i].scaled(c)
        return out

    def apply(self, hv: Vec, m: Vec) -> Vec:
        out: Vec = {}
        for i, c in hv.items():
            axpy(out, self.act[i](m), c)
        return out

    def verify(self) -> CheckReport:
        rep = CheckReport(f"H-module {self.name}".strip())
        H = self.H
        ident = LinMap.identity(self.space)
        rep.check("action-unital", "1·m = m", self.action(H.unit) == ident)
        wit = None
        for i in range(H.dim):
            for j in range(H.dim):
                if self.action(H.table[i][j]) != self.act[i] @ self.act[j]:
                    wit = f"({H.labels[i]}, {H.labels[j]})"
                    break
            if wit:
                break
        rep.check("action-associative", "(hh')·m = h·(h'·m)", wit is None, wit)
        return rep.done()


def base_module(h) -> HModule:
    """A_l with h·a = ε_l(h s_l(a))."""
    L = _core(h).left
    A, H = L.A, L.H
    act = []
    for i in range(H.dim):
        act.append(LinMap(A.space, A.space, [L.eps(H.mul({i: ONE}, L.s.cols[a])) for a in range(A.dim)]))
    return HModule(h, A.space, act, "base")


def induced_bimodule(m: HModule) -> Bimodule:
    """a₁·m·a₂ = s_l(a₁)t_l(a₂)·m."""
    L = _core(m.h).left
    A = L.A
    left = [m.action(L.s.cols[a]) for a in range(A.dim)]
    right = [m.action(L.t.cols[a]) for a in range(A.dim)]
    return Bimodule(m.space, A, A, left, right, f"induced {m.name}".strip())


class ActionDoesNotDescend(ValueError):
    pass


def monoidal_product(m: HModule, n: HModule) -> tuple[HModule, BalancedTensor]:
    """h·(x⊗y) = h₍₁₎·x ⊗ h₍₂₎·y on M⊗_{A_l}N."""
    core = _core(m.h)
    L = core.left
    H = L.H
    bt = BalancedTensor([induced_bimodule(m), induced_bimodule(n)])
    dm, dn = m.dim, n.dim
    q, proj, reps = bt.quotient_data()
    act = []
    for i in range(H.dim):
        cols = []
        for k in range(dm * dn):
            out: Vec = {}
            for key, c in L.delta.cols[i].items():
                h1, h2 = divmod(key, H.dim)
                axpy(out, tensor_apply([m.act[h1], n.act[h2]], {k: ONE}, [dm, dn], [dm, dn]), c)
            cols.append(out)
        f = LinMap(FinSpace(dm * dn), FinSpace(dm * dn), cols)
        dsc = descends(f, bt, bt)
        if not dsc.ok:
            raise ActionDoesNotDescend(f"action of {H.labels[i]}: {dsc.witness}")
        act.append(dsc.map)
    return HModule(m.h, q, act, f"{m.name}⊗{n.name}"), bt


def unit_constraint_check(m: HModule) -> CheckReport:
    """M⊗_{A_l}A_l → M, x⊗a ↦ t_l(a)·x is a bijective H-linear map."""
    rep = CheckReport(f"unit constraint {m.name}".strip())
    base = base_module(m.h)
    prod, bt = monoidal_product(m, base)
    L = _core(m.h).left
    na = L.A.dim
    cols = []
    for k in range(m.dim * na):
        x, a = divmod(k, na)
        cols.append(m.action(L.t.cols[a])({x: ONE}))
    f = LinMap(FinSpace(m.dim * na), m.space, cols)
    dsc = descends(f, bt)
    rep.check("unit-map-descends", "x·a ⊗ b = x ⊗ a·b is respected", dsc.ok, dsc.witness)
    if not dsc.ok:
        return rep.done()
    g = dsc.map
    rep.check("unit-map-bijective", "M⊗A_l ≅ M", g.is_bijective(), f"rank {g.rank()}")
    wit = None
    for i in range(m.H.dim):
        if g @ prod.act[i] != m.act[i] @ g:
            wit = m.H.labels[i]
            break
    rep.check("unit-map-H-linear", "the unit constraint commutes with the action", wit is None, wit)
    return rep.done()


class HModuleAlgebra:
    def __init__(self, module: HModule, alg: Algebra):
        if module.space.dim != alg.dim:
            raise ValueError("module and algebra live on different spaces")
        self.module = module
        self.alg = alg

    @property
    def h(self):
        return self.module.h

    def verify(self) -> CheckReport:
        m, B = self.module, self.alg
        core = _core(m.h)
        L = core.left
        H = L.H
        d = H.dim
        rep = CheckReport(f"H-module algebra {B.name}".strip())
        rep.extend(m.verify())
        wit = None
        for i in range(d):
            for x in range(B.dim):
                for y in range(B.dim):
                    lhs = m.act[i](B.table[x][y])
                    rhs: Vec = {}
                    for key, c in L.delta.cols[i].items():
                        h1, h2 = divmod(key, d)
                        axpy(rhs, B.mul(m.act[h1].cols[x], m.act[h2].cols[y]), c)
                    if lhs != rhs:
                        wit = f"{H.labels[i]}·({B.labels[x]}{B.labels[y]})"
                        break
                if wit:
                    break
            if wit:
                break
        rep.check("module-algebra-multiplicative", "h·(bb') = (h₍₁₎·b)(h₍₂₎·b')", wit is None, wit)
        wit = None
        for i in range(d):
            if m.act[i](B.unit) != m.apply(L.s(L.eps.cols[i]), B.unit):
                wit = H.labels[i]
                break
        rep.check("module-algebra-unit", "h·1 = s_l(ε_l(h))·1", wit is None, wit)
        wit = None
        for a in range(L.A.dim):
            ta, sa = m.action(L.t.cols[a]), m.action(L.s.cols[a])
            for x in range(B.dim):
                for y in range(B.dim):
                    if B.mul(ta.cols[x], {y: ONE}) != B.mul({x: ONE}, sa.cols[y]):
                        wit = f"a={L.A.labels[a]}, ({B.labels[x]}, {B.labels[y]})"
                        break
                if wit:
                    break
            if wit:
                break
        rep.check("module-algebra-balanced", "(t_l(a)·b)b' = b(s_l(a)·b')", wit is None, wit)
        if isinstance(m.h, StarHopfAlgebroid) and B.star is not None:
            w = star_compatibility_witness(self)
            rep.check("module-star-algebra", "(h·b)* = S(h)*·b*", w is None, w)
        return rep.done()


def star_compatibility_witness(b: HModuleAlgebra) -> str | None:
    sh = b.h
    m, B = b.module, b.alg
    H = m.H
    for i in range(H.dim):
        w = sh.star_H(sh.S.cols[i])
        for x in range(B.dim):
            if B.star(m.act[i].cols[x]) != m.apply(w, B.star.cols[x]):
                return f"h={H.labels[i]}, b={B.labels[x]}"
    return None


def function_module_algebra(h) -> HModuleAlgebra:
    """The base algebra as a module algebra through h·a = ε_l(h s_l(a))."""
    m = base_module(h)
    return HModuleAlgebra(m, _core(h).left.A)


def groupoid_rep_to_module(hc, g: FiniteGroupoid, fibers: Sequence[int], rep: Sequence[LinMap]) -> HModule:
    """(a·u)(x) = Σ_{t(γ)=x} a(γ) γ·u(s(γ)) on sections of a bundle with fiber dims per object.

    rep[γ] maps the fiber over s(γ) to the fiber over t(γ).
    """
    offs = [0]
    for f in fibers:
        offs.append(offs[-1] + f)
    labels = [f"{g.objects[x]}:{i}" for x in range(g.n_objects) for i in range(fibers[x])]
    sp = FinSpace(labels)
    for a in range(g.n_arrows):
        r = rep[a]
        if r.domain.dim != fibers[g.src[a]] or r.codomain.dim != fibers[g.tgt[a]]:
            raise ValueError(f"representation of {g.arrows[a]} has the wrong shape")
    for x, u in enumerate(g.unit):
        if rep[u] != LinMap.identity(rep[u].domain):
            raise ValueError(f"unit arrow at {g.objects[x]} does not act trivially")
    for (a, b), c in g.comp.items():
        if rep[c] != rep[a] @ rep[b]:
            raise ValueError(f"representation is not functorial at ({g.arrows[a]}, {g.arrows[b]})")
    act = []
    for a in range(g.n_arrows):
        s, t = g.src[a], g.tgt[a]
        cols = []
        for k in range(sp.dim):
            if offs[s] <= k < offs[s + 1]:
                img = rep[a].cols[k - offs[s]]
                cols.append({offs[t] + i: c for i, c in img.items()})
            else:
                cols.append({})
        act.append(LinMap(sp, sp, cols))
    return HModule(hc, sp, act, "sections")


def trivial_line_bundle(g: FiniteGroupoid):
    one = FinSpace(1)
    return [1] * g.n_objects, [LinMap.identity(one) for _ in range(g.n_arrows)]


def invariants(m: HModule | HModuleAlgebra, two_sided: bool = False) -> Subspace:
    """{b : h·b = s_lε_l(h)·b for all h}; two_sided adds t_lε_l(h)·b."""
    mod = m.module if isinstance(m, HModuleAlgebra) else m
    L = _core(mod.h).left
    H = L.H
    blocks = []
    for i in range(H.dim):
        blocks.append(mod.act[i] - mod.action(L.s(L.eps.cols[i])))
        if two_sided:
            blocks.append(mod.act[i] - mod.action(L.t(L.eps.cols[i])))
    return _stacked_kernel(mod.space, blocks)


def _stacked_kernel(space: FinSpace, maps: Sequence[LinMap]) -> Subspace:
    n = space.dim
    cols = [dict() for _ in range(n)]
    off = 0
    for f in maps:
        for j in range(n):
            for k, c in f.cols[j].items():
                cols[j][off + k] = c
        off += f.codomain.dim
    return kernel(LinMap(space, FinSpace(max(off, 1)), cols))


def invariant_subalgebra_check(b: HModuleAlgebra, two_sided: bool = False) -> CheckReport:
    rep = CheckReport("invariant subalgebra")
    inv = invariants(b, two_sided)
    B = b.alg
    rep.info["dim"] = inv.dim
    rep.check("contains-unit", "1 ∈ B_H", inv.contains(B.unit))
    wit = None
    for u in inv.basis:
        for v in inv.basis:
            if not inv.contains(B.mul(u, v)):
                wit = "product of basis vectors leaves B_H"
                break
        if wit:
            break
    rep.check("closed-product", "B_H is a subalgebra", wit is None, wit)
    if B.star is not None:
        ok = all(inv.contains(B.star(u)) for u in inv.basis)
        rep.check("closed-star", "B_H is closed under *", ok)
    return rep.done()


# ---------------------------------------------------------------- conjugates

def _conj_map(f: LinMap) -> LinMap:
    return LinMap(f.domain, f.codomain, [conj(c) for c in f.cols], f.antilinear)


def conjugate(m: HModule) -> HModule:
    """Action h·m̄ = bar(S(h)*·m), written in the barred basis."""
    sh = m.h
    if not isinstance(sh, StarHopfAlgebroid):
        raise ValueError("conjugate modules need a Hopf *-algebroid")
    H = m.H
    act = [_conj_map(m.action(sh.star_H(sh.S.cols[i]))) for i in range(H.dim)]
    return HModule(sh, m.space, act, f"bar({m.name})")


def double_conjugate_check(m: HModule) -> CheckReport:
    rep = CheckReport(f"double conjugate {m.name}".strip())
    mm = conjugate(conjugate(m))
    wit = next((m.H.labels[i] for i in range(m.H.dim) if mm.act[i] != m.act[i]), None)
    rep.check("double-conjugate-iso", "bar bar M ≅ M through m ↦ m", wit is None, wit)
    return rep.done()


def conjugate_algebra(B: Algebra) -> Algebra:
    """bar(b) bar(b') = bar(b'b) in the barred basis."""
    n = B.dim
    tab = [[conj(B.table[j][i]) for j in range(n)] for i in range(n)]
    return Algebra(B.space, tab, conj(B.unit), f"bar({B.name})")


def sharp(b: HModuleAlgebra) -> tuple[LinMap, CheckReport]:
    """# : B → bar(B), b ↦ bar(b*), with its algebra and H-linearity checks."""
    B = b.alg
    if B.star is None:
        raise ValueError("sharp needs a *-algebra")
    sh = LinMap(B.space, B.space, [conj(c) for c in B.star.cols])
    Bb = conjugate_algebra(B)
    rep = CheckReport("sharp")
    wit = None
    for i in range(B.dim):
        for j in range(B.dim):
            if sh(B.table[i][j]) != Bb.mul(sh.cols[i], sh.cols[j]):
                wit = f"({B.labels[i]}, {B.labels[j]})"
                break
        if wit:
            break
    rep.check("sharp-multiplicative", "#(bb') = #(b)#(b')", wit is None, wit)
    rep.check("sharp-unital", "#(1) = 1", sh(B.unit) == Bb.unit)
    rep.check("sharp-bijective", "# is bijective", sh.is_bijective())
    cm = conjugate(b.module)
    wit = next((b.module.H.labels[i] for i in range(b.module.H.dim)
                if sh @ b.module.act[i] != cm.act[i] @ sh), None)
    rep.check("sharp-H-linear", "# intertwines the action with the conjugate action", wit is None, wit)
    return sh, rep.done()


# ---------------------------------------------------------------- adjoint relation

def adjoint_check(m: HModuleAlgebra, tau: LinMap) -> CheckReport:
    """⟨h·f, g⟩ = ⟨f, (S²h)*·g⟩ with ⟨f, g⟩ = τ(f g*), after checking τ(h·b) = τ(s_r(ε_r(h))·b)."""
    sh = m.h
    core = _core(sh)
    R = core.right
    mod, B = m.module, m.alg
    H = mod.H
    tau = getattr(tau, "functional", tau)
    rep = CheckReport("adjoint relation")
    wit = None
    for i in range(H.dim):
        shifted = mod.action(R.s(R.eps.cols[i]))
        for x in range(B.dim):
            if tau(mod.act[i].cols[x]) != tau(shifted.cols[x]):
                wit = f"h={H.labels[i]}, b={B.labels[x]}"
                break
        if wit:
            break
    rep.check("state-right-invariant", "τ(h·b) = τ(ε_r(h)·b)", wit is None, wit)
    if wit is not None:
        rep.info["hypothesis"] = "hypothesis fails"
        return rep.done()

    def inner(f: Vec, g: Vec) -> Vec:
        return tau(B.mul(f, B.star(g)))

    S2 = core.S @ core.S
    wit = None
    for i in range(H.dim):
        dag = mod.action(sh.star_H(S2.cols[i]))
        for x in range(B.dim):
            for y in range(B.dim):
                if inner(mod.act[i].cols[x], {y: ONE}) != inner({x: ONE}, dag.cols[y]):
                    wit = f"h={H.labels[i]}, f={B.labels[x]}, g={B.labels[y]}"
                    break
            if wit:
                break
        if wit:
            break
    rep.check("adjoint-identity", "⟨h·f, g⟩ = ⟨f, (S²(h))*·g⟩", wit is None, wit)
    return rep.done()


def groupoid_invariant_sections(g: FiniteGroupoid, fibers: Sequence[int], rep: Sequence[LinMap]) -> Subspace:
    """{u : γ·u(s(γ)) = u(t(γ))} computed directly from the arrows."""
    offs = [0]
    for f in fibers:
        offs.append(offs[-1] + f)
    n = offs[-1]
    sp = FinSpace(n)
    maps = []
    for a in range(g.n_arrows):
        s, t = g.src[a], g.tgt[a]
        cols = []
        for k in range(n):
            v: Vec = {}
            if offs[s] <= k < offs[s + 1]:
                axpy(v, rep[a].cols[k - offs[s]])
            if offs[t] <= k < offs[t + 1]:
                axpy(v, {k - offs[t]: ONE}, -ONE)
            cols.append(v)
        maps.append(LinMap(sp, FinSpace(max(fibers[t], 1)), cols))
    return _stacked_kernel(sp, maps)


def groupoid_invariants_match(hc, g: FiniteGroupoid, fibers=None, rep=None) -> CheckReport:
    if fibers is None:
        fibers, rep = trivial_line_bundle(g)
    m = groupoid_rep_to_module(hc, g, fibers, rep)
    direct = groupoid_invariant_sections(g, fibers, rep)
    via_module = invariants(m)
    r = CheckReport(f"groupoid invariants {g.name}")
    r.info["dim"] = via_module.dim
    r.check("invariants-match", "G-invariant sections = module invariants", direct == via_module,
            f"dims {direct.dim} vs {via_module.dim}")
    return r.done()
