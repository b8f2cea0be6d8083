"""Finite-dimensional unital algebras given by structure constants."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Sequence

from .linalg import FinSpace, LinMap, Vec, axpy, scale, show, unit
from .report import CheckReport
from .scalar import I, ONE


class Algebra:
    """Unital associative algebra; table[i][j] is the product e_i e_j."""

    def __init__(self, space: FinSpace, table: Sequence[Sequence[Vec]], unit_vec: Vec,
                 name: str = "", star: LinMap | None = None, hopf: HopfData | None = None):
        n = space.dim
        if len(table) != n or any(len(r) != n for r in table):
            raise ValueError("structure table must be dim x dim")
        self.space = space
        self.table = [[dict(x) for x in r] for r in table]
        self.unit = dict(unit_vec)
        self.name = name
        self.star = star
        self.hopf = hopf
        self._idem: bool | None = None

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def labels(self):
        return self.space.labels

    def basis(self, i: int) -> Vec:
        return {i: ONE}

    def mul(self, u: Vec, v: Vec) -> Vec:
        out: Vec = {}
        tab = self.table
        for i, a in u.items():
            row = tab[i]
            for j, b in v.items():
                p = row[j]
                if p:
                    axpy(out, p, a * b)
        return out

    def mul_many(self, *vs: Vec) -> Vec:
        out = self.unit
        for v in vs:
            out = self.mul(out, v)
        return out

    def left_mult(self, a: Vec) -> LinMap:
        return LinMap(self.space, self.space, [self.mul(a, {j: ONE}) for j in range(self.dim)])

    def right_mult(self, a: Vec) -> LinMap:
        return LinMap(self.space, self.space, [self.mul({j: ONE}, a) for j in range(self.dim)])

    def is_commutative(self) -> bool:
        return all(self.table[i][j] == self.table[j][i]
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def has_idempotent_basis(self) -> bool:
        """True when the basis is a complete family of orthogonal idempotents."""
        if self._idem is None:
            n = self.dim
            ok = self.unit == {i: ONE for i in range(n)}
            for i in range(n):
                if not ok:
                    break
                for j in range(n):
                    want = {i: ONE} if i == j else {}
                    if self.table[i][j] != want:
                        ok = False
                        break
            self._idem = ok
        return self._idem

    def show(self, v: Vec) -> str:
        return show(v, self.labels)

    def structurally_equal(self, other: Algebra) -> bool:
        return self.dim == other.dim and self.table == other.table and self.unit == other.unit

    def __repr__(self):
        return f"<Algebra {self.name or ''} dim={self.dim}>"


class StarAlgebra(Algebra):
    """Algebra with an antilinear involution."""

    def __init__(self, base: Algebra, star: LinMap):
        super().__init__(base.space, base.table, base.unit, base.name, star, base.hopf)

    @property
    def base(self) -> Algebra:
        return self


@dataclass
class HopfData:
    """Coproduct into the plain tensor square, counit to the ground field, antipode."""
    coproduct: LinMap
    counit: LinMap
    antipode: LinMap


class AlgebraMorphism:
    def __init__(self, map: LinMap, source: Algebra, target: Algebra, name: str = ""):
        if map.domain.dim != source.dim or map.codomain.dim != target.dim:
            raise ValueError("morphism shape does not match its algebras")
        self.map = map
        self.source = source
        self.target = target
        self.name = name

    def __call__(self, v: Vec) -> Vec:
        return self.map(v)

    def verify(self, report: CheckReport | None = None, prefix: str = "") -> CheckReport:
        rep = report or CheckReport(f"morphism {self.name}")
        f, A, B = self.map, self.source, self.target
        p = prefix or self.name or "morphism"
        ok = f(A.unit) == B.unit
        rep.check(f"{p}-unital", f"{self.name}(1) = 1", ok, f"{self.name}(1) = {B.show(f(A.unit))}")
        wit = None
        for i in range(A.dim):
            fi = f.cols[i]
            for j in range(A.dim):
                if f(A.table[i][j]) != B.mul(fi, f.cols[j]):
                    wit = f"{A.labels[i]}, {A.labels[j]}"
                    break
            if wit:
                break
        rep.check(f"{p}-multiplicative", f"{self.name}(xy) = {self.name}(x){self.name}(y)",
                  wit is None, wit)
        return rep


# ---------------------------------------------------------------- constructors

def ground_field() -> StarAlgebra:
    sp = FinSpace(["1"])
    a = Algebra(sp, [[unit(0)]], unit(0), "k")
    return StarAlgebra(a, LinMap(sp, sp, [unit(0)], antilinear=True))


def function_algebra(n: int, prefix: str = "δ") -> StarAlgebra:
    if n < 1:
        raise ValueError("function_algebra needs n >= 1")
    sp = FinSpace([f"{prefix}{x}" for x in range(n)])
    table = [[unit(i) if i == j else {} for j in range(n)] for i in range(n)]
    a = Algebra(sp, table, {i: ONE for i in range(n)}, f"C({n})")
    a._idem = True
    star = LinMap(sp, sp, [unit(i) for i in range(n)], antilinear=True)
    return StarAlgebra(a, star)


def matrix_algebra(n: int) -> StarAlgebra:
    """Matrix units E_ij with conjugate-transpose involution."""
    labels = [f"E{i}{j}" for i in range(n) for j in range(n)]
    sp = FinSpace(labels)
    idx = lambda i, j: i * n + j
    table = [[{} for _ in range(n * n)] for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                table[idx(i, j)][idx(j, k)] = unit(idx(i, k))
    a = Algebra(sp, table, {idx(i, i): ONE for i in range(n)}, f"M{n}")
    star = LinMap(sp, sp, [unit(idx(j, i)) for i in range(n) for j in range(n)], antilinear=True)
    return StarAlgebra(a, star)


def validate_group(table: Sequence[Sequence[int]]) -> tuple[int, list[int]]:
    """Return (identity, inverses) or raise naming the first violated axiom."""
    n = len(table)
    if n == 0 or any(len(r) != n for r in table):
        raise ValueError("group table must be square and non-empty")
    for r in table:
        for x in r:
            if not (isinstance(x, int) and 0 <= x < n):
                raise ValueError(f"group axiom violated: closure (entry {x!r})")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if table[table[a][b]][c] != table[a][table[b][c]]:
                    raise ValueError(f"group axiom violated: associativity at ({a},{b},{c})")
    ident = next((e for e in range(n) if all(table[e][x] == x == table[x][e] for x in range(n))), None)
    if ident is None:
        raise ValueError("group axiom violated: identity")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == ident == table[b][a]), None)
        if b is None:
            raise ValueError(f"group axiom violated: inverse of element {a}")
        inv.append(b)
    return ident, inv


def group_algebra(table: Sequence[Sequence[int]], names: Sequence[str] | None = None) -> StarAlgebra:
    """Group algebra with Δg = g⊗g, ε(g) = 1, T(g) = g⁻¹ and g* = g⁻¹."""
    ident, inv = validate_group(table)
    n = len(table)
    names = list(names) if names else [f"g{i}" for i in range(n)]
    sp = FinSpace(names)
    tab = [[unit(table[a][b]) for b in range(n)] for a in range(n)]
    a = Algebra(sp, tab, unit(ident), "kΓ")
    sq = FinSpace(n * n)
    cop = LinMap(sp, sq, [unit(g * n + g) for g in range(n)])
    cou = LinMap(sp, FinSpace(["1"]), [unit(0) for _ in range(n)])
    ant = LinMap(sp, sp, [unit(inv[g]) for g in range(n)])
    a.hopf = HopfData(cop, cou, ant)
    star = LinMap(sp, sp, [unit(inv[g]) for g in range(n)], antilinear=True)
    return StarAlgebra(a, star)


def opposite(a: Algebra) -> Algebra:
    n = a.dim
    tab = [[a.table[j][i] for j in range(n)] for i in range(n)]
    name = a.name[:-3] if a.name.endswith("^op") else f"{a.name}^op"
    out = Algebra(a.space, tab, a.unit, name, a.star)
    out._idem = a._idem
    return out


def tensor_algebra(a: Algebra, b: Algebra) -> Algebra:
    m, n = a.dim, b.dim
    labels = [f"{x}⊗{y}" for x in a.labels for y in b.labels]
    sp = FinSpace(labels)
    tab = [[{} for _ in range(m * n)] for _ in range(m * n)]
    for i1 in range(m):
        for i2 in range(m):
            p = a.table[i1][i2]
            if not p:
                continue
            for j1 in range(n):
                for j2 in range(n):
                    q = b.table[j1][j2]
                    if not q:
                        continue
                    out = {}
                    for k, x in p.items():
                        for l, y in q.items():
                            out[k * n + l] = x * y
                    tab[i1 * n + j1][i2 * n + j2] = out
    u = {k * n + l: x * y for k, x in a.unit.items() for l, y in b.unit.items()}
    star = None
    if a.star is not None and b.star is not None:
        cols = []
        for i in range(m):
            for j in range(n):
                cols.append({k * n + l: x * y for k, x in a.star.cols[i].items()
                             for l, y in b.star.cols[j].items()})
        star = LinMap(sp, sp, cols, antilinear=True)
    return Algebra(sp, tab, u, f"{a.name}⊗{b.name}", star)


# ---------------------------------------------------------------- verification

def verify_algebra(a: Algebra) -> CheckReport:
    rep = CheckReport(f"algebra {a.name}".strip())
    n = a.dim
    wit = None
    for i in range(n):
        for j in range(n):
            ij = a.table[i][j]
            for k in range(n):
                if a.mul(ij, {k: ONE}) != a.mul({i: ONE}, a.table[j][k]):
                    wit = f"({a.labels[i]}, {a.labels[j]}, {a.labels[k]})"
                    break
            if wit:
                break
        if wit:
            break
    rep.check("associativity", "(xy)z = x(yz)", wit is None, wit)
    wit = None
    for i in range(n):
        e = {i: ONE}
        if a.mul(a.unit, e) != e or a.mul(e, a.unit) != e:
            wit = a.labels[i]
            break
    rep.check("unit-law", "1x = x1 = x", wit is None, wit)
    return rep.done()


def verify_star(a: Algebra) -> CheckReport:
    rep = CheckReport(f"star-algebra {a.name}".strip())
    s = a.star
    if s is None:
        rep.check("star-present", "an involution is attached", False, "no star")
        return rep.done()
    e0 = {0: ONE}
    ok = s({0: I}) == scale(s(e0), -I) if a.dim else True
    ok = ok and s.antilinear
    rep.check("antilinearity", "(λx)* = conj(λ) x*", ok,
              f"({a.labels[0]}·i)* = {a.show(s({0: I}))}, expected {a.show(scale(s(e0), -I))}")
    wit = next((a.labels[i] for i in range(a.dim) if s(s.cols[i]) != {i: ONE}), None)
    rep.check("involutive", "x** = x", wit is None, wit)
    rep.check("unit-fixed", "1* = 1", s(a.unit) == a.unit, a.show(s(a.unit)))
    wit = None
    for i in range(a.dim):
        for j in range(a.dim):
            if s(a.table[i][j]) != a.mul(s.cols[j], s.cols[i]):
                wit = f"({a.labels[i]}, {a.labels[j]})"
                break
        if wit:
            break
    rep.check("anti-multiplicative", "(xy)* = y* x*", wit is None, wit)
    return rep.done()


# small groups used by presets

def cyclic_group(n: int) -> tuple[list[str], list[list[int]]]:
    return [f"r{k}" if k else "e" for k in range(n)], [[(a + b) % n for b in range(n)] for a in range(n)]


def symmetric_group(k: int) -> tuple[list[str], list[list[int]]]:
    perms = sorted(permutations(range(k)))
    idx = {p: i for i, p in enumerate(perms)}
    # (p q)(x) = p(q(x))
    table = [[idx[tuple(p[q[x]] for x in range(k))] for q in perms] for p in perms]
    names = ["e" if p == tuple(range(k)) else "".join(str(x + 1) for x in p) for p in perms]
    return names, table


def group_by_name(name: str) -> tuple[list[str], list[list[int]]]:
    key = name.strip().replace("ℤ/", "Z").replace("Z/", "Z").replace("S_", "S")
    if key in ("trivial", "1", "Z1"):
        return ["e"], [[0]]
    if key.startswith("Z") and key[1:].isdigit():
        return cyclic_group(int(key[1:]))
    if key.startswith("S") and key[1:].isdigit():
        return symmetric_group(int(key[1:]))
    raise ValueError(f"unknown group {name!r} (use Zn, Sn or trivial)")
