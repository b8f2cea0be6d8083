"""Exact sparse linear algebra over Q(i).

Vectors are dicts {index: Scalar} with no stored zeros.  Maps keep the image
of every basis vector (a column); an antilinear map conjugates the input
coefficients before combining its columns.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalar import ONE, ZERO, Scalar, format_scalar, sc

Vec = dict


# ---------------------------------------------------------------- vectors

def vec(entries: dict | None = None) -> Vec:
    out = {}
    if entries:
        for k, v in entries.items():
            v = sc(v)
            if v:
                out[k] = v
    return out


def unit(i: int) -> Vec:
    return {i: ONE}


def axpy(u: Vec, v: Vec, c: Scalar = ONE) -> Vec:
    """u += c*v in place; returns u."""
    if not c:
        return u
    one = c == 1
    for k, x in v.items():
        y = x if one else c * x
        cur = u.get(k)
        if cur is None:
            u[k] = y
        else:
            y = cur + y
            if y:
                u[k] = y
            else:
                del u[k]
    return u


def add(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), v)


def sub(u: Vec, v: Vec) -> Vec:
    return axpy(dict(u), v, -ONE)


def scale(v: Vec, c) -> Vec:
    c = sc(c)
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def conj(v: Vec) -> Vec:
    return {k: x.conj() for k, x in v.items()}


def combine(terms: Iterable[tuple[Scalar, Vec]]) -> Vec:
    out: Vec = {}
    for c, v in terms:
        axpy(out, v, c)
    return out


def dense(v: Vec, n: int) -> list[Scalar]:
    return [v.get(i, ZERO) for i in range(n)]


def from_dense(xs: Sequence) -> Vec:
    return {i: sc(x) for i, x in enumerate(xs) if sc(x)}


def term(c: Scalar, name: str) -> str:
    """c*name with the sign pulled out: "x", "-x", "1/2*x", "i*x", "(1+i)*x"."""
    neg = (c.re < 0 and not c.im) or (not c.re and c.im < 0)
    a = -c if neg else c
    if a == 1:
        body = name
    elif a.re and a.im:
        body = f"({format_scalar(a)})*{name}"
    elif a.im == 1:
        body = f"i*{name}"
    else:
        body = f"{format_scalar(a)}*{name}"
    return ("-" if neg else "+") + body


def show(v: Vec, labels: Sequence[str] | None = None) -> str:
    if not v:
        return "0"
    out = ""
    for k in sorted(v):
        t = term(v[k], labels[k] if labels is not None else f"e{k}")
        if not out:
            out = t[1:] if t[0] == "+" else t
        else:
            out += f" {t[0]} {t[1:]}"
    return out


# ---------------------------------------------------------------- spaces

class FinSpace:
    """A finite-dimensional space with named basis vectors."""

    def __init__(self, labels: int | Sequence[str], prefix: str = "e"):
        if isinstance(labels, int):
            labels = [f"{prefix}{i}" for i in range(labels)]
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        return isinstance(other, FinSpace) and self.labels == other.labels

    def __hash__(self):
        return hash(self.labels)

    def __repr__(self):
        return f"FinSpace(dim={self.dim})"

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def show(self, v: Vec) -> str:
        return show(v, self.labels)


def tensor_space(*spaces: FinSpace) -> FinSpace:
    labels = [""]
    for s in spaces:
        labels = [f"{a}⊗{b}" if a else b for a in labels for b in s.labels]
    return FinSpace(labels)


# ---------------------------------------------------------------- maps

class LinMap:
    """A (possibly antilinear) map given by the images of basis vectors."""

    def __init__(self, domain: FinSpace, codomain: FinSpace, cols: Sequence[Vec],
                 antilinear: bool = False):
        if len(cols) != domain.dim:
            raise ValueError("one column per domain basis vector required")
        self.domain = domain
        self.codomain = codomain
        self.cols = [dict(c) for c in cols]
        self.antilinear = antilinear
        for c in self.cols:
            for k in c:
                if not 0 <= k < codomain.dim:
                    raise ValueError(f"column entry {k} outside codomain")

    @classmethod
    def from_function(cls, domain, codomain, f, antilinear=False) -> LinMap:
        return cls(domain, codomain, [f(i) for i in range(domain.dim)], antilinear)

    @classmethod
    def from_rows(cls, domain, codomain, rows, antilinear=False) -> LinMap:
        cols = [{} for _ in range(domain.dim)]
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                x = sc(x)
                if x:
                    cols[j][i] = x
        return cls(domain, codomain, cols, antilinear)

    @classmethod
    def identity(cls, space: FinSpace) -> LinMap:
        return cls(space, space, [unit(i) for i in range(space.dim)])

    @classmethod
    def zero(cls, domain: FinSpace, codomain: FinSpace) -> LinMap:
        return cls(domain, codomain, [{} for _ in range(domain.dim)])

    def __call__(self, v: Vec) -> Vec:
        out: Vec = {}
        cols = self.cols
        for j, c in v.items():
            if self.antilinear:
                c = c.conj()
            axpy(out, cols[j], c)
        return out

    def __matmul__(self, other: LinMap) -> LinMap:
        if other.codomain.dim != self.domain.dim:
            raise ValueError("dimension mismatch in composition")
        cols = [self(c) for c in other.cols]
        return LinMap(other.domain, self.codomain, cols, self.antilinear != other.antilinear)

    def _check_same(self, other: LinMap):
        if (self.domain.dim, self.codomain.dim) != (other.domain.dim, other.codomain.dim):
            raise ValueError("shape mismatch")
        if self.antilinear != other.antilinear:
            raise ValueError("cannot add linear and antilinear maps")

    def __add__(self, other: LinMap) -> LinMap:
        self._check_same(other)
        return LinMap(self.domain, self.codomain,
                      [add(a, b) for a, b in zip(self.cols, other.cols)], self.antilinear)

    def __sub__(self, other: LinMap) -> LinMap:
        self._check_same(other)
        return LinMap(self.domain, self.codomain,
                      [sub(a, b) for a, b in zip(self.cols, other.cols)], self.antilinear)

    def __neg__(self):
        return LinMap(self.domain, self.codomain, [scale(c, -1) for c in self.cols],
                      self.antilinear)

    def scaled(self, c) -> LinMap:
        return LinMap(self.domain, self.codomain, [scale(x, c) for x in self.cols],
                      self.antilinear)

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        return (self.domain.dim == other.domain.dim and self.codomain.dim == other.codomain.dim
                and self.antilinear == other.antilinear and self.cols == other.cols)

    def first_difference(self, other: LinMap) -> int | None:
        for j, (a, b) in enumerate(zip(self.cols, other.cols)):
            if a != b:
                return j
        return None

    def is_zero(self) -> bool:
        return all(not c for c in self.cols)

    def rows(self) -> list[list[Scalar]]:
        m = [[ZERO] * self.domain.dim for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                m[i][j] = x
        return m

    def row_vectors(self) -> list[Vec]:
        rows: list[Vec] = [{} for _ in range(self.codomain.dim)]
        for j, c in enumerate(self.cols):
            for i, x in c.items():
                rows[i][j] = x
        return rows

    def rank(self) -> int:
        return span(self.cols, self.codomain.dim).dim

    def is_bijective(self) -> bool:
        return self.domain.dim == self.codomain.dim and self.rank() == self.domain.dim

    def inverse(self) -> LinMap:
        if self.domain.dim != self.codomain.dim:
            raise ValueError("only square maps are invertible")
        cols = []
        lin = LinMap(self.domain, self.codomain, self.cols)
        for i in range(self.codomain.dim):
            x = solve(lin, unit(i))
            if x is None:
                raise ValueError("map is not invertible")
            cols.append(conj(x) if self.antilinear else x)
        # for antilinear f, f^{-1}(e_i) = conj of the linear preimage
        return LinMap(self.codomain, self.domain, cols, self.antilinear)

    def restrict(self, sub: Subspace) -> list[Vec]:
        return [self(b) for b in sub.basis]

    def __repr__(self):
        kind = "antilinear " if self.antilinear else ""
        return f"<{kind}LinMap {self.domain.dim}->{self.codomain.dim}>"


# ---------------------------------------------------------------- echelon

class Echelon:
    """Incremental reduced row echelon form; pivots are leading indices."""

    def __init__(self, n: int):
        self.n = n
        self.rows: dict[int, Vec] = {}

    def reduce(self, v: Vec) -> Vec:
        r = dict(v)
        rows = self.rows
        for p in [k for k in r if k in rows]:
            c = r.get(p)
            if c:
                axpy(r, rows[p], -c)
        return r

    def add(self, v: Vec) -> bool:
        r = self.reduce(v)
        if not r:
            return False
        p = min(r)
        inv = r[p].inverse()
        if inv != 1:
            r = {k: x * inv for k, x in r.items()}
        for q, row in self.rows.items():
            c = row.get(p)
            if c:
                axpy(row, r, -c)
        self.rows[p] = r
        return True

    def freeze(self) -> Subspace:
        return Subspace(self.n, [self.rows[p] for p in sorted(self.rows)], _trusted=True)


class Subspace:
    """Subspace of an n-dimensional coordinate space, stored in canonical RREF."""

    def __init__(self, ambient, basis: Sequence[Vec] = (), _trusted: bool = False):
        self.ambient = ambient if isinstance(ambient, FinSpace) else None
        self.n = ambient.dim if isinstance(ambient, FinSpace) else int(ambient)
        if _trusted:
            self.basis = [dict(b) for b in basis]
        else:
            e = Echelon(self.n)
            for b in basis:
                e.add(b)
            self.basis = [e.rows[p] for p in sorted(e.rows)]
        self.pivots = [min(b) for b in self.basis]
        self._rows = dict(zip(self.pivots, self.basis))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Vec) -> Vec:
        r = dict(v)
        rows = self._rows
        for p in [k for k in r if k in rows]:
            c = r.get(p)
            if c:
                axpy(r, rows[p], -c)
        return r

    def contains(self, v: Vec) -> bool:
        return not self.reduce(v)

    def __contains__(self, v: Vec) -> bool:
        return self.contains(v)

    def coords(self, v: Vec) -> list[Scalar]:
        """Coefficients of v in the echelon basis (v must lie in the subspace)."""
        if not self.contains(v):
            raise ValueError("vector not in subspace")
        return [v.get(p, ZERO) for p in self.pivots]

    def combo(self, coeffs: Sequence) -> Vec:
        return combine((sc(c), b) for c, b in zip(coeffs, self.basis))

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.n == other.n and self.basis == other.basis

    def __le__(self, other: Subspace) -> bool:
        return all(other.contains(b) for b in self.basis)

    def first_outside(self, other: Subspace) -> Vec | None:
        for b in self.basis:
            if not other.contains(b):
                return b
        return None

    def __add__(self, other: Subspace) -> Subspace:
        return Subspace(self.n, list(self.basis) + list(other.basis))

    def intersect(self, other: Subspace) -> Subspace:
        # v = sum a_i b_i = sum c_j b'_j  <=> kernel of [B | -B']
        k = len(self.basis)
        cols = list(self.basis) + [scale(b, -1) for b in other.basis]
        m = LinMap(FinSpace(len(cols)), FinSpace(self.n), cols)
        ker = kernel(m)
        vecs = [combine((c, self.basis[j]) for j, c in v.items() if j < k) for v in ker.basis]
        return Subspace(self.n, vecs)

    def conj(self) -> Subspace:
        return Subspace(self.n, [conj(b) for b in self.basis])

    def is_full(self) -> bool:
        return self.dim == self.n

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.n})"


def span(vectors: Iterable[Vec], n: int) -> Subspace:
    e = Echelon(n)
    for v in vectors:
        e.add(v)
    return e.freeze()


def full_space(n: int) -> Subspace:
    return Subspace(n, [unit(i) for i in range(n)], _trusted=True)


# ---------------------------------------------------------------- operations

def kernel(f: LinMap) -> Subspace:
    """Canonical echelon basis of {v : f(v) = 0}."""
    n = f.domain.dim
    e = Echelon(n)
    for r in f.row_vectors():
        if r:
            e.add(r)
    piv = e.rows
    out = []
    for j in range(n):
        if j in piv:
            continue
        v = {j: ONE}
        for p, row in piv.items():
            c = row.get(j)
            if c:
                v[p] = -c
        out.append(v)
    ker = Subspace(n, out)
    return ker.conj() if f.antilinear else ker


def image(f: LinMap) -> Subspace:
    return span(f.cols, f.codomain.dim)


def quotient(ambient: FinSpace, sub: Subspace) -> tuple[FinSpace, LinMap]:
    """Quotient space on the non-pivot coordinates and the canonical surjection."""
    if sub.n != ambient.dim:
        raise ValueError(f"dimension mismatch: subspace lives in {sub.n}, ambient has {ambient.dim}")
    piv = set(sub.pivots)
    keep = [j for j in range(ambient.dim) if j not in piv]
    pos = {j: i for i, j in enumerate(keep)}
    q = FinSpace([ambient.labels[j] for j in keep])
    cols = []
    for j in range(ambient.dim):
        r = sub.reduce({j: ONE})
        cols.append({pos[k]: x for k, x in r.items()})
    return q, LinMap(ambient, q, cols)


def solve(f: LinMap, target: Vec) -> Vec | None:
    """A preimage of target, free variables set to zero; None if unsolvable."""
    n = f.domain.dim
    e = Echelon(n + 1)
    rows = f.row_vectors()
    for i, r in enumerate(rows):
        row = dict(r)
        t = target.get(i)
        if t:
            row[n] = t
        if row:
            e.add(row)
    for i in target:
        if i >= f.codomain.dim:
            raise ValueError("target outside codomain")
    if n in e.rows:
        return None
    x = {}
    for p, row in e.rows.items():
        c = row.get(n)
        if c:
            x[p] = c
    return conj(x) if f.antilinear else x


def is_hermitian(m: Sequence[Sequence[Scalar]]) -> bool:
    k = len(m)
    return all(len(r) == k for r in m) and all(
        sc(m[i][j]) == sc(m[j][i]).conj() for i in range(k) for j in range(i, k))


def ldl_pivots(m: Sequence[Sequence[Scalar]]) -> list[Scalar]:
    """Pivots of the LDL* elimination of a Hermitian matrix, stopping at the first non-positive one."""
    a = [[sc(x) for x in r] for r in m]
    k = len(a)
    pivots = []
    for p in range(k):
        d = a[p][p]
        pivots.append(d)
        if not d.is_positive_real():
            break
        inv = d.inverse()
        for i in range(p + 1, k):
            f = a[i][p] * inv
            if not f:
                continue
            row_p = a[p]
            row_i = a[i]
            for j in range(p + 1, k):
                if row_p[j]:
                    row_i[j] = row_i[j] - f * row_p[j]
    return pivots


def psd_check(gram: Sequence[Sequence[Scalar]]) -> bool:
    """Exact positive-definiteness test for a Hermitian matrix."""
    if not is_hermitian(gram):
        raise ValueError("psd_check needs a conjugate-symmetric (Hermitian) matrix")
    piv = ldl_pivots(gram)
    return len(piv) == len(gram) and all(p.is_positive_real() for p in piv)


def det(m: Sequence[Sequence[Scalar]]) -> Scalar:
    a = [[sc(x) for x in r] for r in m]
    k = len(a)
    d = ONE
    for p in range(k):
        piv = next((i for i in range(p, k) if a[i][p]), None)
        if piv is None:
            return ZERO
        if piv != p:
            a[p], a[piv] = a[piv], a[p]
            d = -d
        d = d * a[p][p]
        inv = a[p][p].inverse()
        for i in range(p + 1, k):
            f = a[i][p] * inv
            if f:
                for j in range(p, k):
                    a[i][j] = a[i][j] - f * a[p][j]
    return d
