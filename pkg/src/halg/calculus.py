"""Graded algebras, differential calculi with Hopf-algebroid covariance, H₀ and invariant forms."""

from __future__ import annotations

from itertools import product
from typing import Sequence

from .actions import HModule, _stacked_kernel, base_module
from .algebra import Algebra, function_algebra
from .constructors import convolution_algebroid
from .groupoid import FiniteGroupoid, action_groupoid, pair_groupoid
from .hopf import HopfAlgebroid, LeftBialgebroid, StarHopfAlgebroid, verify_left_bialgebroid
from .linalg import (Echelon, FinSpace, LinMap, Subspace, Vec, axpy, conj, kernel, scale, span)
from .report import CheckReport
from .scalar import ONE, Scalar, sc


def _left(h) -> LeftBialgebroid:
    if isinstance(h, StarHopfAlgebroid):
        return h.core.left
    if isinstance(h, HopfAlgebroid):
        return h.left
    return h


class GradedAlgebra:
    """An algebra on the total space together with a degree for every basis vector."""

    def __init__(self, alg: Algebra, degree: Sequence[int]):
        if len(degree) != alg.dim:
            raise ValueError("one degree per basis vector")
        self.alg = alg
        self.degree = list(degree)

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def top(self) -> int:
        return max(self.degree, default=0)

    def indices(self, k: int) -> list[int]:
        return [i for i, d in enumerate(self.degree) if d == k]

    def dims(self) -> list[int]:
        return [len(self.indices(k)) for k in range(self.top + 1)]

    def component(self, k: int) -> Subspace:
        return Subspace(self.dim, [{i: ONE} for i in self.indices(k)], _trusted=True)

    def homogeneous_degree(self, v: Vec) -> int | None:
        ds = {self.degree[i] for i in v}
        return ds.pop() if len(ds) == 1 else None

    def verify(self) -> CheckReport:
        from .algebra import verify_algebra
        rep = CheckReport(f"graded algebra {self.alg.name}".strip())
        rep.extend(verify_algebra(self.alg))
        rep.check("unit-degree-zero", "1 ∈ Ω⁰", all(self.degree[i] == 0 for i in self.alg.unit))
        wit = None
        for i in range(self.dim):
            for j in range(self.dim):
                want = self.degree[i] + self.degree[j]
                if any(self.degree[k] != want for k in self.alg.table[i][j]):
                    wit = f"({self.alg.labels[i]}, {self.alg.labels[j]})"
                    break
            if wit:
                break
        rep.check("graded-product", "Ωᵏ Ωˡ ⊆ Ωᵏ⁺ˡ", wit is None, wit)
        return rep.done()


class DGA:
    """Graded algebra with a degree-one differential and an optional antilinear involution."""

    def __init__(self, graded: GradedAlgebra, d: LinMap, star: LinMap | None = None, name: str = ""):
        self.graded = graded
        self.d = d
        self.star = star
        self.name = name

    @property
    def alg(self) -> Algebra:
        return self.graded.alg

    @property
    def dim(self) -> int:
        return self.graded.dim

    def sign(self, i: int) -> int:
        return -1 if self.graded.degree[i] % 2 else 1


def universal_calculus(n: int, max_degree: int = 3) -> DGA:
    """Universal calculus on n points: Ωᵐ = functions on adjacent-distinct (m+1)-tuples."""
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    tuples: list[tuple[int, ...]] = []
    for m in range(max_degree + 1):
        for t in product(range(n), repeat=m + 1):
            if all(t[i] != t[i + 1] for i in range(m)):
                tuples.append(t)
    idx = {t: i for i, t in enumerate(tuples)}
    sep = "" if n <= 10 else ","
    labels = ["e" + sep.join(str(x) for x in t) for t in tuples]
    sp = FinSpace(labels)
    N = len(tuples)
    table = [[{} for _ in range(N)] for _ in range(N)]
    for i, t in enumerate(tuples):
        for j, u in enumerate(tuples):
            if t[-1] == u[0]:
                w = t + u[1:]
                if w in idx:
                    table[i][j] = {idx[w]: ONE}
    one = {idx[(x,)]: ONE for x in range(n)}
    alg = Algebra(sp, table, one, f"Ω_u({n})")
    degree = [len(t) - 1 for t in tuples]
    cols = []
    for t in tuples:
        v: Vec = {}
        if len(t) <= max_degree:
            for pos in range(len(t) + 1):
                for x in range(n):
                    u = t[:pos] + (x,) + t[pos:]
                    if u in idx:
                        axpy(v, {idx[u]: ONE}, ONE if pos % 2 == 0 else -ONE)
        cols.append(v)
    d = LinMap(sp, sp, cols)
    star_cols = []
    for t in tuples:
        k = len(t) - 1
        sgn = ONE if (k * (k + 1) // 2) % 2 == 0 else -ONE
        star_cols.append({idx[t[::-1]]: sgn})
    star = LinMap(sp, sp, star_cols, antilinear=True)
    alg.star = star
    return DGA(GradedAlgebra(alg, degree), d, star, f"universal({n},{max_degree})")


def verify_dga(c: DGA) -> CheckReport:
    rep = CheckReport(f"differential graded algebra {c.name}".strip())
    rep.extend(c.graded.verify())
    A, d, deg = c.alg, c.d, c.graded.degree
    wit = next((A.labels[i] for i in range(c.dim) if any(deg[k] != deg[i] + 1 for k in d.cols[i])), None)
    rep.check("d-degree-one", "d raises degree by one", wit is None, wit)
    rep.check("d-squared-zero", "d² = 0", (d @ d).is_zero())
    wit = None
    for i in range(c.dim):
        for j in range(c.dim):
            lhs = d(A.table[i][j])
            rhs = A.mul(d.cols[i], {j: ONE})
            axpy(rhs, A.mul({i: ONE}, d.cols[j]), ONE * c.sign(i))
            if lhs != rhs:
                wit = f"({A.labels[i]}, {A.labels[j]})"
                break
        if wit:
            break
    rep.check("leibniz", "d(ωη) = dω η + (−1)ᵏ ω dη", wit is None, wit)
    if c.star is not None:
        rep.extend(verify_dga_star(c))
    return rep.done()


def surjectivity_gaps(c: DGA) -> list[int]:
    """Degrees k where b₀db₁…dbₖ fails to span Ωᵏ."""
    A = c.alg
    B0 = c.graded.indices(0)
    gaps = []
    layer = [{i: ONE} for i in B0]
    for k in range(c.graded.top + 1):
        target = c.graded.component(k)
        sp = span(layer, c.dim)
        if sp.dim != target.dim:
            gaps.append(k)
        nxt = []
        for v in sp.basis:
            for b in B0:
                w = A.mul(v, c.d.cols[b])
                if w:
                    nxt.append(w)
        layer = nxt
    return gaps


def verify_dga_star(c: DGA) -> CheckReport:
    rep = CheckReport("star calculus")
    A, st, d = c.alg, c.star, c.d
    rep.check("star-antilinear", "ω ↦ ω* is antilinear", st.antilinear)
    rep.check("star-involutive", "ω** = ω", st @ st == LinMap.identity(A.space))
    deg = c.graded.degree
    rep.check("star-degree-zero", "* preserves degree",
              all(deg[k] == deg[i] for i in range(c.dim) for k in st.cols[i]))
    rep.check("star-commutes-d", "(dω)* = d(ω*)", st @ d == d @ st)
    wit = None
    for i in range(c.dim):
        for j in range(c.dim):
            s = -ONE if (deg[i] * deg[j]) % 2 else ONE
            if st(A.table[i][j]) != scale(A.mul(st.cols[j], st.cols[i]), s):
                wit = f"({A.labels[i]}, {A.labels[j]})"
                break
        if wit:
            break
    rep.check("star-graded-anti-multiplicative", "(ωη)* = (−1)ᵏˡ η*ω*", wit is None, wit)
    return rep.done()


# ---------------------------------------------------------------- covariance

class CovariantCalculus:
    def __init__(self, dga: DGA, h, module: HModule, h0: Subspace | None = None, name: str = ""):
        self.dga = dga
        self.h = h
        self.module = module
        self._h0 = h0
        self.name = name or dga.name

    @property
    def left(self) -> LeftBialgebroid:
        return _left(self.h)

    @property
    def h0(self) -> Subspace:
        if self._h0 is None:
            self._h0 = compute_h0(self.dga, self.h, self.module)
        return self._h0

    @property
    def star(self):
        return self.dga.star


def _commutator_cols(c_dga: DGA, L: LeftBialgebroid, module: HModule, which: str) -> list[LinMap]:
    H = L.H
    d = c_dga.d
    f = L.s if which == "s" else L.t
    out = []
    for i in range(H.dim):
        corr = module.act[i] - module.action(f(L.eps.cols[i]))
        out.append(corr @ d - d @ corr)
    return out


def _flatten(maps: Sequence[LinMap]) -> list[Vec]:
    vecs = []
    for f in maps:
        n = f.codomain.dim
        v: Vec = {}
        for j, col in enumerate(f.cols):
            for k, c in col.items():
                v[j * n + k] = c
        vecs.append(v)
    return vecs


def compute_h0(dga: DGA, h, module: HModule) -> Subspace:
    """{h : [h − s_lε_l(h), d] = [h − t_lε_l(h), d] = 0} as a subspace of H."""
    L = _left(h)
    H = L.H
    cs = _flatten(_commutator_cols(dga, L, module, "s"))
    ct = _flatten(_commutator_cols(dga, L, module, "t"))
    off = dga.dim * dga.dim
    cols = []
    for a, b in zip(cs, ct):
        v = dict(a)
        for k, c in b.items():
            v[off + k] = c
        cols.append(v)
    return kernel(LinMap(H.space, FinSpace(2 * off), cols))


def generated_subalgebra(alg: Algebra, gens: Sequence[Vec]) -> Subspace:
    """Smallest subalgebra containing gens and 1, by iterated products until stable."""
    ech = Echelon(alg.dim)
    ech.add(alg.unit)
    for g in gens:
        ech.add(g)
    while True:
        basis = ech.freeze().basis
        grew = False
        for u in basis:
            for v in basis:
                if ech.add(alg.mul(u, v)):
                    grew = True
        if not grew:
            return ech.freeze()


def verify_covariant_calculus(c: CovariantCalculus, module_algebra: bool = True) -> CheckReport:
    """Calculus, module, degree, H₀ and generation checks; module_algebra=False skips the
    module-algebra block, which no discrete groupoid calculus with d ≠ 0 can satisfy."""
    from .actions import HModuleAlgebra
    rep = CheckReport(f"covariant calculus {c.name}".strip())
    dga, m, L = c.dga, c.module, c.left
    H = L.H
    rep.extend(verify_dga(dga), "dga")
    gaps = surjectivity_gaps(dga)
    rep.check("surjectivity", "Ωᵏ = span b₀db₁…dbₖ", not gaps, f"degrees {gaps}")
    rep.extend(m.verify(), "module")
    deg = dga.graded.degree
    wit = None
    for i in range(H.dim):
        for j in range(dga.dim):
            if any(deg[k] != deg[j] for k in m.act[i].cols[j]):
                wit = f"{H.labels[i]}·{dga.alg.labels[j]}"
                break
        if wit:
            break
    rep.check("grading-preserved", "the action preserves degree", wit is None, wit)
    if module_algebra:
        rep.extend(HModuleAlgebra(m, dga.alg).verify(), "module-algebra")
    # degree zero agrees with the base module when Ω⁰ is the base algebra
    base = base_module(c.h)
    zero = dga.graded.indices(0)
    if len(zero) == base.dim:
        wit = None
        for i in range(H.dim):
            for a, j in enumerate(zero):
                got = {zero.index(k): v for k, v in m.act[i].cols[j].items() if k in zero}
                if got != base.act[i].cols[a]:
                    wit = f"{H.labels[i]}·{dga.alg.labels[j]}"
                    break
            if wit:
                break
        rep.check("degree-zero-base-action", "Ω⁰ carries the base action", wit is None, wit)
    exact = compute_h0(dga, c.h, m)
    rep.info["dim H0"] = exact.dim
    rep.info["dim H"] = H.dim
    if c._h0 is not None:
        rep.check("h0-commutators", "declared H₀ satisfies both commutator conditions", c._h0 <= exact)
    h0 = c.h0
    gens = [L.s.cols[a] for a in range(L.A.dim)] + [L.t.cols[a] for a in range(L.A.dim)] + list(h0.basis)
    gen = generated_subalgebra(H, gens)
    rep.check("generation", "A_l and H₀ generate H", gen.dim == H.dim, f"generated dim {gen.dim} < {H.dim}")
    if isinstance(c.h, StarHopfAlgebroid) and dga.star is not None:
        sh = c.h
        Si = sh.core.S_inv
        img = span([Si(sh.star_H(v)) for v in h0.basis], H.dim)
        rep.check("h0-star-closure", "h ∈ H₀ ⇔ S⁻¹(h*) ∈ H₀", img == h0)
    return rep.done()


def eq434_check(c: CovariantCalculus, max_degree: int = 2) -> CheckReport:
    """d(a·ω) = d(ε_l(a))∧ω + a·dω over bases, degrees ≤ max_degree."""
    rep = CheckReport(f"differential of the action {c.name}".strip())
    dga, m, L = c.dga, c.module, c.left
    H, A, d = L.H, dga.alg, dga.d
    zero = dga.graded.indices(0)
    wit = None
    for i in range(H.dim):
        e = L.eps.cols[i]
        ef = {zero[a]: v for a, v in e.items()}
        de = d(ef)
        for j in range(dga.dim):
            if dga.graded.degree[j] > max_degree:
                continue
            lhs = d(m.act[i].cols[j])
            rhs = A.mul(de, {j: ONE})
            axpy(rhs, m.act[i](d.cols[j]))
            if lhs != rhs:
                wit = f"a = {H.labels[i]}, ω = {A.labels[j]}"
                break
        if wit:
            break
    rep.check("action-differential", "d(a·ω) = d(ε_l(a))∧ω + a·dω", wit is None, wit)
    return rep.done()


def invariant_forms(c: CovariantCalculus, h0: Subspace | None = None) -> tuple[Subspace, CheckReport]:
    """Ω₀ = {ω : h·ω = s_lε_l(h)·ω = t_lε_l(h)·ω for h ∈ H₀} with closure checks."""
    m, L, dga = c.module, c.left, c.dga
    h0 = c.h0 if h0 is None else h0
    maps = []
    for v in h0.basis:
        act = m.action(v)
        e = L.eps(v)
        maps.append(act - m.action(L.s(e)))
        maps.append(act - m.action(L.t(e)))
    omega0 = _stacked_kernel(dga.alg.space, maps) if maps else Subspace(dga.dim, [{i: ONE} for i in range(dga.dim)], True)
    rep = CheckReport(f"invariant forms {c.name}".strip())
    rep.info["dims"] = [omega0.intersect(dga.graded.component(k)).dim for k in range(dga.graded.top + 1)]
    A = dga.alg
    rep.check("contains-unit", "1 ∈ Ω₀", omega0.contains(A.unit))
    rep.check("closed-product", "Ω₀ ∧ Ω₀ ⊆ Ω₀",
              all(omega0.contains(A.mul(u, v)) for u in omega0.basis for v in omega0.basis))
    rep.check("closed-d", "d(Ω₀) ⊆ Ω₀", all(omega0.contains(dga.d(u)) for u in omega0.basis))
    graded_ok = all(omega0.contains({k: x for k, x in u.items() if dga.graded.degree[k] == deg})
                    for u in omega0.basis for deg in range(dga.graded.top + 1))
    rep.check("graded", "Ω₀ is a graded subspace", graded_ok)
    if dga.star is not None:
        rep.check("closed-star", "Ω₀* = Ω₀", all(omega0.contains(dga.star(u)) for u in omega0.basis))
    return omega0, rep.done()


def restrict_dga(c: DGA, sub_: Subspace) -> DGA:
    """The differential graded subalgebra on a graded, d-closed, product-closed subspace."""
    basis = []
    degs = []
    for k in range(c.graded.top + 1):
        part = sub_.intersect(c.graded.component(k))
        basis.extend(part.basis)
        degs.extend([k] * part.dim)
    S = Subspace(c.dim, basis)

    def coords(v):
        cs = S.coords(v)
        return {i: x for i, x in enumerate(cs) if x}

    # S.coords uses the echelon basis; convert to the graded basis collected above
    fromB = LinMap(FinSpace(len(basis)), FinSpace(len(basis)), [coords(b) for b in basis]).inverse()

    def local(v):
        return fromB(coords(v))

    n = len(basis)
    labels = [c.alg.show(b) for b in basis]
    sp = FinSpace(labels)
    table = [[local(c.alg.mul(basis[i], basis[j])) for j in range(n)] for i in range(n)]
    alg = Algebra(sp, table, local(c.alg.unit), f"{c.alg.name}|0")
    d = LinMap(sp, sp, [local(c.d(b)) for b in basis])
    star = None
    if c.star is not None:
        star = LinMap(sp, sp, [local(c.star(b)) for b in basis], antilinear=True)
        alg.star = star
    out = DGA(GradedAlgebra(alg, degs), d, star, f"{c.name}|0")
    out.embedding = LinMap(sp, c.alg.space, basis)
    out.local = local
    return out


def conjugate_dga_check(c: CovariantCalculus) -> CheckReport:
    """# : Ω → Ω̄, ω ↦ bar(ω*) is H-linear and a morphism of differential graded algebras."""
    dga, m = c.dga, c.module
    rep = CheckReport(f"conjugate calculus {c.name}".strip())
    if dga.star is None:
        rep.check("star-present", "an involution is attached", False, "no star")
        return rep.done()
    A, deg = dga.alg, dga.graded.degree
    n = dga.dim
    sharp = LinMap(A.space, A.space, [conj(col) for col in dga.star.cols])
    bar_table = [[scale(conj(A.table[j][i]), -ONE if (deg[i] * deg[j]) % 2 else ONE) for j in range(n)]
                 for i in range(n)]
    wit = None
    for i in range(n):
        for j in range(n):
            lhs = sharp(A.table[i][j])
            rhs: Vec = {}
            for a, x in sharp.cols[i].items():
                for b, y in sharp.cols[j].items():
                    axpy(rhs, bar_table[a][b], x * y)
            if lhs != rhs:
                wit = f"({A.labels[i]}, {A.labels[j]})"
                break
        if wit:
            break
    rep.check("sharp-multiplicative", "#(ω∧η) = #ω ∧̄ #η", wit is None, wit)
    dbar = LinMap(A.space, A.space, [conj(col) for col in dga.d.cols])
    rep.check("sharp-d", "# d = d̄ #", sharp @ dga.d == dbar @ sharp)
    rep.check("sharp-unital", "#(1) = 1", sharp(A.unit) == conj(A.unit))
    if isinstance(c.h, StarHopfAlgebroid):
        from .actions import conjugate
        cm = conjugate(m)
        wit = next((m.H.labels[i] for i in range(m.H.dim) if sharp @ m.act[i] != cm.act[i] @ sharp), None)
        rep.check("sharp-H-linear", "# intertwines the action with the conjugate action", wit is None, wit)
        h0 = c.h0
        Si = c.h.core.S_inv
        bar_h0 = span([Si(c.h.star_H(v)) for v in h0.basis], m.H.dim)
        rep.check("conjugate-h0", "H₀ of Ω̄ equals H₀ of Ω", bar_h0 == h0)
    return rep.done()


# ---------------------------------------------------------------- action groupoids on forms

def transport_action(hc, g: FiniteGroupoid, group_action: Sequence[Sequence[int]],
                     dga: DGA, n: int) -> HModule:
    """δ_(γ)·e_T = [T₀ = s(γ)] e_{g·T} for arrows γ = (g, m) of a translation groupoid.

    group_action[k] is the permutation of the points by the k-th group element; arrows are
    ordered as (g, m) ↦ g·npts + m.
    """
    labels = dga.alg.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    sep = "" if n <= 10 else ","

    def parse(lab):
        body = lab[1:]
        return tuple(int(x) for x in (body.split(",") if sep else body))

    tuples = [parse(l) for l in labels]
    sp = dga.alg.space
    act = []
    for a in range(g.n_arrows):
        gi, m = divmod(a, n)
        perm = group_action[gi]
        cols = []
        for t in tuples:
            if t[0] == m:
                u = tuple(perm[x] for x in t)
                cols.append({idx["e" + sep.join(str(x) for x in u)]: ONE})
            else:
                cols.append({})
        act.append(LinMap(sp, sp, cols))
    return HModule(hc, sp, act, "forms")


def translation_model(n: int):
    """ℤ/n acting on n points by translation; returns (groupoid, permutations, arrow map to pair:n)."""
    from .algebra import cyclic_group
    names, table = cyclic_group(n)
    perms = [[(x + k) % n for x in range(n)] for k in range(n)]
    g = action_groupoid(names, table, perms, f"ℤ/{n}⋉{n}")
    # arrow (k, m) goes m → m+k, i.e. pair arrow (target, source) = (m+k, m)
    to_pair = [((m + k) % n) * n + m for k in range(n) for m in range(n)]
    return g, perms, to_pair


def translation_pair_isomorphism(n: int) -> CheckReport:
    from .constructors import check_isomorphism
    g, _, to_pair = translation_model(n)
    h1 = convolution_algebroid(g)
    h2 = convolution_algebroid(pair_groupoid(n))
    phi = LinMap(h1.H.space, h2.H.space, [{to_pair[a]: ONE} for a in range(g.n_arrows)])
    base = LinMap.identity(h1.left.A.space)
    return check_isomorphism(h1, h2, phi, base, base, f"ℤ/{n}⋉{n} ≅ pair:{n}")


def groupoid_calculus(kind: str, max_degree: int = 2):
    """Convolution algebroid of a translation groupoid acting on the universal calculus.

    kind: 'action:Z2:swap2' style or 'pair:n' (through the translation model).
    """
    from .algebra import group_by_name
    from .groupoid import parse_action
    if kind.startswith("pair:"):
        n = int(kind.split(":")[1])
        g, perms, _ = translation_model(n)
    elif kind.startswith("action:"):
        _, gname, pspec = kind.split(":")
        names, table = group_by_name(gname)
        perms = parse_action(names, table, pspec)
        g = action_groupoid(names, table, perms, kind)
        n = len(perms[0])
    elif kind.startswith("unit:"):
        n = int(kind.split(":")[1])
        g = action_groupoid(["e"], [[0]], [list(range(n))], kind)
        perms = [list(range(n))]
    else:
        raise ValueError(f"no calculus preset for {kind!r}")
    h = convolution_algebroid(g)
    dga = universal_calculus(n, max_degree)
    m = transport_action(h, g, perms, dga, n)
    return CovariantCalculus(dga, h, m, name=f"{kind} on universal calculus"), g, perms


def group_invariant_forms(dga: DGA, perms: Sequence[Sequence[int]], n: int) -> Subspace:
    """Forms fixed by every point permutation, computed without reference to H."""
    labels = dga.alg.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    sep = "" if n <= 10 else ","
    maps = []
    for perm in perms:
        cols = []
        for i, lab in enumerate(labels):
            body = lab[1:]
            t = tuple(int(x) for x in (body.split(",") if sep else body))
            u = tuple(perm[x] for x in t)
            v = {idx["e" + sep.join(str(x) for x in u)]: ONE}
            axpy(v, {i: ONE}, -ONE)
            cols.append(v)
        maps.append(LinMap(dga.alg.space, dga.alg.space, cols))
    return _stacked_kernel(dga.alg.space, maps)


# ---------------------------------------------------------------- CM algebroid on a Q-covariant calculus

def cm_calculus(cm: StarHopfAlgebroid, q: Algebra, perms: Sequence[Sequence[int]], n: int,
                max_degree: int = 2) -> CovariantCalculus:
    """(a⊗q⊗b)·ω = a(q·ω)b with q acting by transport of points."""
    dga = universal_calculus(n, max_degree)
    labels = dga.alg.labels
    idx = {lab: i for i, lab in enumerate(labels)}
    tuples = [tuple(int(x) for x in lab[1:]) for lab in labels]
    A = dga.alg
    zero = dga.graded.indices(0)
    qact = []
    for k in range(q.dim):
        perm = perms[k]
        qact.append(LinMap(A.space, A.space,
                           [{idx["e" + "".join(str(perm[x]) for x in t)]: ONE} for t in tuples]))
    nq = q.dim
    act = []
    for i in range(n):
        for k in range(nq):
            for j in range(n):
                a, b = {zero[i]: ONE}, {zero[j]: ONE}
                act.append(LinMap(A.space, A.space,
                                  [A.mul(A.mul(a, qact[k].cols[c]), b) for c in range(A.dim)]))
    m = HModule(cm, A.space, act, "forms")
    return CovariantCalculus(dga, cm, m, name="CM on universal calculus")


# ---------------------------------------------------------------- the bialgebroid of universal 1-forms

class FiniteSetBialgebroid:
    """H ⊆ C(X⁴) over C(X), generated by C(X) and the subspace H₀ cut out by three condition families.

    Arrows of the pair groupoid on Y = X×X are indexed (z, w, x, y): source (z, w), target (x, y).
    """

    def __init__(self, n: int):
        if n < 2:
            raise ValueError("need at least two points")
        self.n = n
        Y = [(a, b) for a in range(n) for b in range(n)]
        self.Y = Y
        self.big = convolution_algebroid(pair_groupoid(n * n))
        self.C = self.big.H
        N = self.C.dim

        def arrow(z, w, x, y):
            return (x * n + y) * (n * n) + (z * n + w)
        self.arrow = arrow
        self.N = N
        self.h0_big = self._conditions_kernel()
        self.cond_vectors = self._condition_vectors()
        sfun = [self._s_big(a) for a in range(n)]
        self.H_big = generated_subalgebra(self.C, sfun + list(self.h0_big.basis))
        self._build()

    # conditions i)–iii) as row functionals on C(X⁴)
    def _condition_vectors(self):
        n, ar = self.n, self.arrow
        rows = {"sum-over-w": [], "diagonal-vanishing": [], "sum-over-z": []}
        X = range(n)
        for z, x, y in product(X, X, X):
            v: Vec = {}
            for w in X:
                axpy(v, {ar(z, w, x, y): ONE})
            axpy(v, {ar(z, z, x, x): ONE}, -ONE)
            rows["sum-over-w"].append(v)
        for z, w, x in product(X, X, X):
            if z != w:
                rows["diagonal-vanishing"].append({ar(z, w, x, x): ONE})
        for w, x, y in product(X, X, X):
            v = {}
            for z in X:
                axpy(v, {ar(z, w, x, y): ONE})
            axpy(v, {ar(w, w, y, y): ONE}, -ONE)
            rows["sum-over-z"].append(v)
        return rows

    def _conditions_kernel(self) -> Subspace:
        rows = self._condition_vectors()
        allrows = rows["sum-over-w"] + rows["diagonal-vanishing"] + rows["sum-over-z"]
        cols = [dict() for _ in range(self.N)]
        for r, v in enumerate(allrows):
            for k, c in v.items():
                cols[k][r] = c
        return kernel(LinMap(FinSpace(self.N), FinSpace(len(allrows)), cols))

    def _s_big(self, a: int) -> Vec:
        """s(δ_a ⊗ 1) in C(X⁴): identity arrows at (a, y) for all y."""
        n = self.n
        return {self.arrow(a, y, a, y): ONE for y in range(n)}

    def _build(self):
        n = self.n
        C = self.C
        basis = self.H_big.basis
        self.basis = basis
        d = len(basis)
        self.incl = LinMap(FinSpace(d), C.space, basis)

        def local(v: Vec) -> Vec:
            cs = self.H_big.coords(v)
            return {i: x for i, x in enumerate(cs) if x}
        self.local = local
        labels = [f"h{i}" for i in range(d)]
        sp = FinSpace(labels)
        table = [[local(C.mul(basis[i], basis[j])) for j in range(d)] for i in range(d)]
        H = Algebra(sp, table, local(C.unit), f"H({n})")
        A = function_algebra(n)
        s = LinMap(A.space, sp, [local(self._s_big(a)) for a in range(n)])
        # ε(h)(x) = Σ_{z,w} h(z,w,x,x)
        eps_cols = []
        for b in basis:
            v: Vec = {}
            for key, c in b.items():
                tgt, src = divmod(key, n * n)
                x, y = divmod(tgt, n)
                if x == y:
                    axpy(v, {x: ONE}, c)
            eps_cols.append(v)
        eps = LinMap(sp, A.space, eps_cols)
        self.H, self.A, self.s = H, A, s
        self.h0 = Subspace(d, [local(v) for v in self.h0_big.basis])
        delta = self._coproduct(H, A, s)
        self.left = LeftBialgebroid(H, A, s, s, delta, eps, f"H({n})")

    def _element(self, M: LinMap) -> Vec:
        """The element of C(X⁴) acting on C(X²) by the matrix M."""
        n2 = self.n * self.n
        v: Vec = {}
        for src, col in enumerate(M.cols):
            for tgt, c in col.items():
                v[tgt * n2 + src] = c
        return v

    def _coproduct(self, H, A, s) -> LinMap:
        """Coproduct read off the block decomposition H ≅ End(Ω⁰) ⊕ End(Ω¹).

        Matrix units E⁰ on Ω⁰ are grouplike.  For a matrix unit E¹ from e_q to e_p on Ω¹,
        with p over x and q over z,
            Δ(E¹) = E⁰_xz ⊗ E¹ + E¹ ⊗ E⁰_xz + E¹ ⊗ U_xz,
        where U_xz moves the fibre over z onto the fibre over x preserving the order of
        second coordinates.
        """
        n = self.n
        dga = self.forms()
        P = self._frame(dga)
        Pinv = P.inverse()
        sp = dga.alg.space
        zero = dga.graded.indices(0)
        one = dga.graded.indices(1)
        base_of = {}
        fibre: dict[int, list[int]] = {x: [] for x in range(n)}
        for j in one:
            x = int(dga.alg.labels[j][1])
            base_of[j] = x
            fibre[x].append(j)
        d = H.dim
        cache: dict = {}

        def unit_elem(a, c):
            key = (a, c)
            if key not in cache:
                E = LinMap(sp, sp, [{a: ONE} if k == c else {} for k in range(sp.dim)])
                cache[key] = self.local(self._element(P @ E @ Pinv))
            return cache[key]

        def u_elem(x, z):
            key = ("U", x, z)
            if key not in cache:
                v: Vec = {}
                for a, c in zip(fibre[x], fibre[z]):
                    axpy(v, unit_elem(a, c))
                cache[key] = v
            return cache[key]

        def tens(u, v):
            return {i * d + j: x * y for i, x in u.items() for j, y in v.items()}

        def delta_unit(a, c):
            if a in zero:
                e = unit_elem(a, c)
                return tens(e, e)
            x, z = base_of[a], base_of[c]
            e, e0, u = unit_elem(a, c), unit_elem(zero[x], zero[z]), u_elem(x, z)
            out = tens(e0, e)
            axpy(out, tens(e, e0))
            axpy(out, tens(e, u))
            return out

        cols = []
        self.block_diagonal = True
        for b in self.basis:
            B = Pinv @ self.big_action(b) @ P
            v: Vec = {}
            for c, col in enumerate(B.cols):
                for a, x in col.items():
                    if (a in zero) != (c in zero):
                        self.block_diagonal = False
                        continue
                    axpy(v, delta_unit(a, c), x)
            cols.append(v)
        return LinMap(H.space, FinSpace(d * d), cols)

    def inherits_big_coproduct(self) -> bool:
        """Whether Δ_H maps to the diagonal coproduct of C(X⁴) over C(X²)."""
        big_left = self.big.left
        bt_big = big_left.tensor
        d, N = self.H.dim, self.N
        for i in range(d):
            v: Vec = {}
            for key, c in self.left.delta.cols[i].items():
                a, b = divmod(key, d)
                for p, x in self.incl.cols[a].items():
                    for q, y in self.incl.cols[b].items():
                        axpy(v, {p * N + q: ONE}, c * x * y)
            if not bt_big.equal(v, big_left.delta(self.incl.cols[i])):
                return False
        return True

    # action on Ω⁰ ⊕ Ω¹, modelled inside C(X²)
    def forms(self) -> DGA:
        return universal_calculus(self.n, 1)

    def _frame(self, dga: DGA) -> LinMap:
        """Ω → C(X²): δ_x ↦ δ_x⊗1, e_xy ↦ indicator of (x, y)."""
        n = self.n
        cols = []
        for lab in dga.alg.labels:
            t = tuple(int(x) for x in lab[1:])
            if len(t) == 1:
                cols.append({t[0] * n + y: ONE for y in range(n)})
            else:
                cols.append({t[0] * n + t[1]: ONE})
        return LinMap(dga.alg.space, FinSpace(n * n), cols)

    def big_action(self, v: Vec) -> LinMap:
        """h·F(x,y) = Σ_{z,w} h(z,w,x,y) F(z,w) on C(X²)."""
        n2 = self.n * self.n
        cols = [dict() for _ in range(n2)]
        for key, c in v.items():
            tgt, src = divmod(key, n2)
            axpy(cols[src], {tgt: ONE}, c)
        return LinMap(FinSpace(n2), FinSpace(n2), cols)

    def calculus(self) -> CovariantCalculus:
        dga = self.forms()
        P = self._frame(dga)
        Pinv = P.inverse()
        act = [Pinv @ self.big_action(b) @ P for b in self.basis]
        m = HModule(self.left, dga.alg.space, act, "1-forms")
        return CovariantCalculus(dga, self.left, m, self.h0, f"H({self.n}) on universal 1-forms")

    def exact_commutant(self) -> Subspace:
        """All h in C(X⁴) preserving both degrees with [h − sε(h), d] = 0 on Ω⁰ ⊕ Ω¹."""
        dga = self.forms()
        P = self._frame(dga)
        Pinv = P.inverse()
        n = self.n
        zero = dga.graded.indices(0)
        D = dga.d
        vecs = []
        for k in range(self.N):
            a = Pinv @ self.big_action({k: ONE}) @ P
            # ε(δ_k) as a function on X, acting by left multiplication
            tgt, src = divmod(k, n * n)
            x, y = divmod(tgt, n)
            e = {zero[x]: ONE} if x == y else {}
            left = LinMap(dga.alg.space, dga.alg.space, [dga.alg.mul(e, {j: ONE}) for j in range(dga.dim)])
            corr = a - left
            comm = corr @ D - D @ corr
            v: Vec = {}
            off = dga.dim * dga.dim
            for j in range(dga.dim):
                for i, c in comm.cols[j].items():
                    v[j * dga.dim + i] = c
                for i, c in a.cols[j].items():
                    if (j in zero) != (i in zero):
                        v[off + j * dga.dim + i] = c
            vecs.append(v)
        f = LinMap(FinSpace(self.N), FinSpace(2 * dga.dim * dga.dim), vecs)
        return kernel(f)


def finite_set_bialgebroid(n: int) -> tuple[LeftBialgebroid, CovariantCalculus, FiniteSetBialgebroid]:
    fs = FiniteSetBialgebroid(n)
    return fs.left, fs.calculus(), fs


def verify_finite_set(fs: FiniteSetBialgebroid) -> CheckReport:
    n = fs.n
    rep = CheckReport(f"bialgebroid of universal 1-forms on {n} points")
    rep.extend(verify_left_bialgebroid(fs.left), "left")
    rep.info["dim H0"] = fs.h0.dim
    rep.info["dim H"] = fs.H.dim
    rep.check("h0-lower-bound", f"dim H₀ ≥ n² = {n * n}", fs.h0.dim >= n * n, f"dim H₀ = {fs.h0.dim}")
    rep.check("h-lower-bound", f"dim H ≥ n³ = {n ** 3}", fs.H.dim >= n ** 3, f"dim H = {fs.H.dim}")
    rep.check("block-decomposition", "H preserves Ω⁰ and Ω¹ and equals End(Ω⁰) ⊕ End(Ω¹)",
              fs.block_diagonal and fs.H.dim == n * n + (n * n - n) ** 2, f"dim H = {fs.H.dim}")
    rep.info["coproduct restricts from C(X⁴)"] = fs.inherits_big_coproduct()
    for fam, rows in fs.cond_vectors.items():
        ok = all(sum((r.get(k, 0) * c for k, c in b.items()), Scalar(0)) == 0
                 for b in fs.h0_big.basis for r in rows)
        rep.check(f"condition-{fam}", f"H₀ satisfies the {fam} family", ok)
    c = fs.calculus()
    m, dga = c.module, c.dga
    deg = dga.graded.degree
    wit = None
    for i in range(fs.H.dim):
        for j in range(dga.dim):
            if any(deg[k] != deg[j] for k in m.act[i].cols[j]):
                wit = f"{fs.H.labels[i]}·{dga.alg.labels[j]}"
                break
        if wit:
            break
    rep.check("action-preserves-degrees", "H preserves {f⊗1} and the off-diagonal 1-forms", wit is None, wit)
    rep.extend(m.verify(), "module")
    L = fs.left
    wit = None
    for v in fs.h0.basis:
        act = m.action(v)
        corr = act - m.action(L.s(L.eps(v)))
        if not (corr @ dga.d - dga.d @ corr).is_zero():
            wit = L.H.show(v)
            break
    rep.check("h0-commutator", "[h − sε(h), d] = 0 for h ∈ H₀", wit is None, wit)
    base = base_module(L)
    zero = dga.graded.indices(0)
    ok = all({zero.index(k): x for k, x in m.act[i].cols[j].items()} == base.act[i].cols[a]
             for i in range(fs.H.dim) for a, j in enumerate(zero))
    rep.check("degree-zero-base-action", "Ω⁰ carries the base action ε(h s(f))", ok)
    exact = fs.exact_commutant()
    rep.info["dim exact commutant in C(X⁴)"] = exact.dim
    rep.info["H0 inside exact commutant"] = fs.h0_big <= exact
    return rep.done()


# ---------------------------------------------------------------- conjugates, states, orientations

def trivial_symmetry(dga: DGA, name: str = "") -> CovariantCalculus:
    """The calculus with the ground field acting by scalars."""
    from .groupoid import point_groupoid
    h = convolution_algebroid(point_groupoid(["e"], [[0]], "trivial"))
    m = HModule(h, dga.alg.space, [LinMap.identity(dga.alg.space)], "forms")
    return CovariantCalculus(dga, h, m, name=name or dga.name)


def conjugate_calculus(c: CovariantCalculus) -> CovariantCalculus:
    """Ω̄ with bar ω ∧ bar η = (−1)ᵏˡ bar(η∧ω), d̄ bar ω = bar dω and h·bar ω = bar(S(h)*·ω)."""
    from .actions import conjugate
    dga = c.dga
    if dga.star is None:
        raise ValueError("conjugate calculus needs an involution")
    A, deg = dga.alg, dga.graded.degree
    n = dga.dim
    sp = FinSpace(["bar " + x for x in A.labels])
    table = [[scale(conj(A.table[j][i]), -ONE if (deg[i] * deg[j]) % 2 else ONE) for j in range(n)]
             for i in range(n)]
    alg = Algebra(sp, table, conj(A.unit), f"conj {A.name}")
    d = LinMap(sp, sp, [conj(col) for col in dga.d.cols])
    star = LinMap(sp, sp, [conj(col) for col in dga.star.cols], antilinear=True)
    alg.star = star
    bar = DGA(GradedAlgebra(alg, deg), d, star, f"conj {dga.name}")
    cm = conjugate(c.module)
    m = HModule(c.h, sp, cm.act, "conjugate forms")
    return CovariantCalculus(bar, c.h, m, name=f"conjugate of {c.name}")


sharp_dga_check = conjugate_dga_check


class State:
    """Unital positive functional on Ω⁰, stored as a functional on the whole form space."""

    def __init__(self, functional: LinMap, name: str = ""):
        self.functional = functional
        self.name = name

    def __call__(self, v: Vec) -> Scalar:
        return self.functional(v).get(0, Scalar(0))

    @classmethod
    def from_weights(cls, dga: DGA, weights: dict) -> State:
        """weights: label of a degree-zero basis vector -> value."""
        cols = [{} for _ in range(dga.dim)]
        for lab, w in weights.items():
            w = sc(w)
            if w:
                cols[dga.alg.space.index(lab)] = {0: w}
        return cls(LinMap(dga.alg.space, FinSpace(["τ"]), cols))

    def restrict(self, emb: LinMap) -> State:
        return State(self.functional @ emb, self.name)

    def verify(self, dga: DGA) -> CheckReport:
        from .linalg import is_hermitian, psd_check
        rep = CheckReport("state")
        A = dga.alg
        rep.check("state-unital", "τ(1) = 1", self(A.unit) == ONE, str(self(A.unit)))
        zero = dga.graded.indices(0)
        if dga.star is not None:
            gram = [[self(A.mul(dga.star.cols[i], {j: ONE})) for j in zero] for i in zero]
            ok = is_hermitian(gram) and psd_check(gram)
            rep.check("state-positive", "the Gram matrix τ(bᵢ*bⱼ) is positive definite", ok)
        return rep.done()


def volume_map(dga: DGA, values: dict) -> LinMap:
    """vol on the top degree, given on basis labels as vectors of Ω⁰; zero elsewhere."""
    cols = [{} for _ in range(dga.dim)]
    for lab, v in values.items():
        cols[dga.alg.space.index(lab)] = dict(v)
    return LinMap(dga.alg.space, dga.alg.space, cols)


def total_dimension(dga: DGA) -> int:
    return max((k for k in range(dga.graded.top + 1) if dga.graded.indices(k)), default=0)


def orientation_tools(c: CovariantCalculus, vol: LinMap, tau: State, restrict: bool = True) -> CheckReport:
    dga, m = c.dga, c.module
    A = dga.alg
    rep = CheckReport(f"orientation {c.name}".strip())
    N = total_dimension(dga)
    rep.info["total dimension"] = N
    top, zero = dga.graded.indices(N), dga.graded.indices(0)
    rep.check("total-dimension", "Ωᴺ ≠ 0 and Ωᵏ = 0 above N", N > 0 and bool(top), f"N = {N}")
    deg = dga.graded.degree
    lands = all(deg[k] == 0 for i in top for k in vol.cols[i])
    sub_ = LinMap(FinSpace(len(top)), A.space, [vol.cols[i] for i in top])
    bij = lands and len(top) == len(zero) and sub_.rank() == len(zero)
    rep.check("vol-bijective", "vol : Ωᴺ → Ω⁰ is bijective", bij, "not orientable with this vol")
    wit = None
    for b in zero:
        for i in top:
            if vol(A.mul({b: ONE}, {i: ONE})) != A.mul({b: ONE}, vol.cols[i]) or \
                    vol(A.mul({i: ONE}, {b: ONE})) != A.mul(vol.cols[i], {b: ONE}):
                wit = f"b = {A.labels[b]}, ω = {A.labels[i]}"
                break
        if wit:
            break
    rep.check("vol-bimodule", "vol(bω) = b vol(ω) and vol(ωb) = vol(ω) b", wit is None, wit)
    if m is not None:
        wit = None
        for h in range(m.H.dim):
            for i in top:
                if vol(m.act[h].cols[i]) != m.act[h](vol.cols[i]):
                    wit = f"h = {m.H.labels[h]}, ω = {A.labels[i]}"
                    break
            if wit:
                break
        rep.check("vol-H-linear", "vol(h·ω) = h·vol(ω)", wit is None, wit)
    if dga.star is not None:
        ok = all(vol(dga.star.cols[i]) == dga.star(vol.cols[i]) for i in top)
        rep.check("vol-star", "vol(ω*) = vol(ω)*", ok)
    rep.extend(tau.verify(dga))
    ok = all(tau(vol(dga.d.cols[i])) == 0 for i in dga.graded.indices(N - 1))
    rep.check("integral-closed", "∫τ dω = 0 on Ωᴺ⁻¹", ok)
    if restrict and m is not None and rep.ok:
        omega0, _ = invariant_forms(c)
        r = restrict_dga(dga, omega0)
        rc = trivial_symmetry(r, f"invariant part of {c.name}")
        rvol = LinMap(r.alg.space, r.alg.space, [r.local(vol(r.embedding.cols[i])) for i in range(r.dim)])
        sub_rep = orientation_tools(rc, rvol, tau.restrict(r.embedding), restrict=False)
        rep.extend(sub_rep, "invariant")
    return rep.done()
