"""Bimodules, balanced tensor products and Takeuchi subspaces.

Plain tensors of several factors are sparse vectors indexed row-major:
(i1, ..., ik) -> ((i1*d2 + i2)*d3 + ...).  A balanced tensor keeps the plain
ambient and exposes a canonical representative (normal form) of each class,
so equality in the quotient is equality of normal forms.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import prod
from typing import Callable, Sequence

from .algebra import Algebra
from .linalg import (Echelon, FinSpace, LinMap, Subspace, Vec, axpy, kernel, quotient,
                     show, span, sub)
from .report import CheckReport
from .scalar import ONE


class DimensionTooLarge(ValueError):
    pass


def max_dim() -> int:
    try:
        return int(os.environ.get("HALG_MAX_DIM", "4096"))
    except ValueError:
        return 4096


# ---------------------------------------------------------------- plain tensors

def tsplit(idx: int, dims: Sequence[int]) -> tuple[int, ...]:
    out = []
    for d in reversed(dims):
        idx, r = divmod(idx, d)
        out.append(r)
    return tuple(reversed(out))


def tjoin(parts: Sequence[int], dims: Sequence[int]) -> int:
    idx = 0
    for p, d in zip(parts, dims):
        idx = idx * d + p
    return idx


def tprod(vecs: Sequence[Vec], dims: Sequence[int]) -> Vec:
    out: Vec = {0: ONE}
    for v, d in zip(vecs, dims):
        nxt: Vec = {}
        for i, a in out.items():
            base = i * d
            for j, b in v.items():
                nxt[base + j] = a * b
        out = nxt
    return {k: x for k, x in out.items() if x}


def tensor_apply(maps: Sequence, v: Vec, dims_in: Sequence[int], dims_out: Sequence[int]) -> Vec:
    """Apply f1⊗...⊗fk to a plain tensor; None means identity in that slot.

    Each fi is a LinMap or a callable taking a basis index to a vector.  A
    product of antilinear LinMaps is antilinear; mixing is refused.
    """
    anti = [isinstance(f, LinMap) and f.antilinear for f in maps if f is not None]
    if any(anti) and not (all(anti) and len(anti) == len(maps)):
        raise ValueError("tensor of linear and antilinear maps is not defined")
    conj_in = bool(anti) and all(anti)
    cache: list[dict] = [dict() for _ in maps]

    def image(slot: int, i: int) -> Vec:
        c = cache[slot]
        r = c.get(i)
        if r is None:
            f = maps[slot]
            if f is None:
                r = {i: ONE}
            elif isinstance(f, LinMap):
                r = f.cols[i]
            else:
                r = f(i)
            c[i] = r
        return r

    out: Vec = {}
    for idx, c in v.items():
        parts = tsplit(idx, dims_in)
        if conj_in:
            c = c.conj()
        t = tprod([image(s, p) for s, p in enumerate(parts)], dims_out)
        axpy(out, t, c)
    return out


def flip(v: Vec, d1: int, d2: int) -> Vec:
    return {j * d1 + i: x for k, x in v.items() for i, j in [divmod(k, d2)]}


def tmul(alg: Algebra, u: Vec, v: Vec, k: int) -> Vec:
    """Factorwise product in the k-fold plain tensor power of alg."""
    d = alg.dim
    dims = [d] * k
    out: Vec = {}
    for i, a in u.items():
        pi = tsplit(i, dims)
        for j, b in v.items():
            pj = tsplit(j, dims)
            prods = []
            for x, y in zip(pi, pj):
                p = alg.table[x][y]
                if not p:
                    break
                prods.append(p)
            else:
                axpy(out, tprod(prods, dims), a * b)
    return out


def slot_mul(alg: Algebra, v: Vec, slot: int, x: Vec, side: str, k: int) -> Vec:
    """Multiply factor `slot` of a k-fold tensor by x on the left ('L') or right ('R')."""
    d = alg.dim
    dims = [d] * k
    cache = {}
    out: Vec = {}
    for idx, c in v.items():
        parts = list(tsplit(idx, dims))
        p = parts[slot]
        img = cache.get(p)
        if img is None:
            img = alg.mul(x, {p: ONE}) if side == "L" else alg.mul({p: ONE}, x)
            cache[p] = img
        for q, y in img.items():
            parts[slot] = q
            j = tjoin(parts, dims)
            cur = out.get(j)
            val = c * y if cur is None else cur + c * y
            if val:
                out[j] = val
            else:
                out.pop(j, None)
    return out


# ---------------------------------------------------------------- bimodules

class Bimodule:
    """(left_alg, right_alg)-bimodule with one action matrix per algebra basis element."""

    def __init__(self, space: FinSpace, left_alg: Algebra, right_alg: Algebra,
                 left: Sequence[LinMap], right: Sequence[LinMap], name: str = ""):
        if len(left) != left_alg.dim or len(right) != right_alg.dim:
            raise ValueError("one action matrix per algebra basis element")
        self.space = space
        self.left_alg = left_alg
        self.right_alg = right_alg
        self.left = list(left)
        self.right = list(right)
        self.name = name

    @property
    def dim(self) -> int:
        return self.space.dim

    def act_left(self, a: Vec, m: Vec) -> Vec:
        out: Vec = {}
        for i, c in a.items():
            axpy(out, self.left[i](m), c)
        return out

    def act_right(self, m: Vec, b: Vec) -> Vec:
        out: Vec = {}
        for i, c in b.items():
            axpy(out, self.right[i](m), c)
        return out

    def left_map(self, a: Vec) -> LinMap:
        return LinMap(self.space, self.space, [self.act_left(a, {j: ONE}) for j in range(self.dim)])

    def right_map(self, b: Vec) -> LinMap:
        return LinMap(self.space, self.space, [self.act_right({j: ONE}, b) for j in range(self.dim)])

    def verify(self) -> CheckReport:
        rep = CheckReport(f"bimodule {self.name}".strip())
        A, B = self.left_alg, self.right_alg
        idl = LinMap.identity(self.space)
        rep.check("left-unital", "1·m = m", self.left_map(A.unit) == idl)
        rep.check("right-unital", "m·1 = m", self.right_map(B.unit) == idl)
        wit = None
        for i in range(A.dim):
            for j in range(A.dim):
                if self.left_map(A.table[i][j]) != self.left[i] @ self.left[j]:
                    wit = f"({A.labels[i]}, {A.labels[j]})"
                    break
            if wit:
                break
        rep.check("left-associative", "(ab)·m = a·(b·m)", wit is None, wit)
        wit = None
        for i in range(B.dim):
            for j in range(B.dim):
                if self.right_map(B.table[i][j]) != self.right[j] @ self.right[i]:
                    wit = f"({B.labels[i]}, {B.labels[j]})"
                    break
            if wit:
                break
        rep.check("right-associative", "m·(ab) = (m·a)·b", wit is None, wit)
        wit = None
        for i in range(A.dim):
            for j in range(B.dim):
                if self.left[i] @ self.right[j] != self.right[j] @ self.left[i]:
                    wit = f"({A.labels[i]}, {B.labels[j]})"
                    break
            if wit:
                break
        rep.check("actions-commute", "(a·m)·b = a·(m·b)", wit is None, wit)
        return rep.done()

    def idempotent_split(self, side: str) -> bool:
        """Whether the basis idempotents of the acting algebra act as a complete orthogonal family."""
        alg = self.left_alg if side == "L" else self.right_alg
        if not alg.has_idempotent_basis():
            return False
        mats = self.left if side == "L" else self.right
        ident = LinMap.identity(self.space)
        total = LinMap.zero(self.space, self.space)
        for x, mx in enumerate(mats):
            total = total + mx
            for y, my in enumerate(mats):
                prod_ = mx @ my
                if x == y:
                    if prod_ != mx:
                        return False
                elif not prod_.is_zero():
                    return False
        return total == ident


def algebra_bimodule(H: Algebra, left_alg: Algebra, left_map: LinMap, left_side: str,
                     right_alg: Algebra, right_map: LinMap, right_side: str,
                     name: str = "") -> Bimodule:
    """Bimodule on H whose actions are multiplications by images of algebra maps.

    left_side/right_side say whether the image multiplies H on the left ('L') or
    the right ('R').
    """
    def mats(alg, f, side):
        out = []
        for i in range(alg.dim):
            x = f.cols[i]
            out.append(H.left_mult(x) if side == "L" else H.right_mult(x))
        return out

    return Bimodule(H.space, left_alg, right_alg, mats(left_alg, left_map, left_side),
                    mats(right_alg, right_map, right_side), name)


def regular_bimodule(A: Algebra) -> Bimodule:
    ident = LinMap.identity(A.space)
    return algebra_bimodule(A, A, ident, "L", A, ident, "R", f"{A.name} regular")


# ---------------------------------------------------------------- balanced tensors

def _same_algebra(a: Algebra, b: Algebra) -> bool:
    return a is b or a.structurally_equal(b)


class BalancedTensor:
    """M1 ⊗_{A1} M2 ⊗_{A2} ... ⊗ Mk as a quotient of the plain tensor."""

    def __init__(self, factors: Sequence[Bimodule], mode: str | None = None):
        if len(factors) < 1:
            raise ValueError("need at least one factor")
        for m, n in zip(factors, factors[1:]):
            if not _same_algebra(m.right_alg, n.left_alg):
                raise ValueError(f"middle algebra mismatch: {m.right_alg!r} vs {n.left_alg!r}")
        self.factors = list(factors)
        self.dims = [f.dim for f in factors]
        self.ambient_dim = prod(self.dims)
        if mode is None:
            mode = "idempotent" if all(
                m.idempotent_split("R") and n.idempotent_split("L")
                for m, n in zip(factors, factors[1:])) else "generic"
        self.mode = mode
        self._relations: Subspace | None = None
        self._image: Subspace | None = None
        self._dim: int | None = None
        self._proj = None
        if mode == "idempotent":
            self._slot_parts = []
            for m, n in zip(factors, factors[1:]):
                r = [[(x, m.right[x].cols[i]) for x in range(len(m.right)) if m.right[x].cols[i]]
                     for i in range(m.dim)]
                l_ = [{x: n.left[x].cols[i] for x in range(len(n.left)) if n.left[x].cols[i]}
                      for i in range(n.dim)]
                self._slot_parts.append((r, l_))
        elif self.ambient_dim > max_dim():
            raise DimensionTooLarge(
                f"balanced tensor ambient dimension {self.ambient_dim} exceeds HALG_MAX_DIM={max_dim()}")

    # -- relations
    def relation_vectors(self):
        """Generating relations (m·a)⊗n − m⊗(a·n), slot by slot."""
        dims = self.dims
        k = len(dims)
        for s in range(k - 1):
            M, N = self.factors[s], self.factors[s + 1]
            for a in range(M.right_alg.dim):
                Ra, La = M.right[a], N.left[a]
                for J in range(self.ambient_dim):
                    parts = list(tsplit(J, dims))
                    m, n = parts[s], parts[s + 1]
                    rv = Ra.cols[m]
                    lv = La.cols[n]
                    out: Vec = {}
                    for i, c in rv.items():
                        parts[s], parts[s + 1] = i, n
                        axpy(out, {tjoin(parts, dims): c})
                    for j, c in lv.items():
                        parts[s], parts[s + 1] = m, j
                        axpy(out, {tjoin(parts, dims): -c})
                    if out:
                        yield out, (s, a, J)

    def relations(self) -> Subspace:
        if self._relations is None:
            if self.ambient_dim > max_dim():
                raise DimensionTooLarge(
                    f"relation space of dimension {self.ambient_dim} exceeds HALG_MAX_DIM={max_dim()}")
            e = Echelon(self.ambient_dim)
            for r, _ in self.relation_vectors():
                e.add(r)
            self._relations = e.freeze()
        return self._relations

    # -- normal forms
    def normal_form(self, v: Vec) -> Vec:
        if self.mode == "generic":
            return self.relations().reduce(v)
        dims = self.dims
        cur = v
        for s, (rparts, lparts) in enumerate(self._slot_parts):
            out: Vec = {}
            for idx, c in cur.items():
                parts = list(tsplit(idx, dims))
                m, n = parts[s], parts[s + 1]
                ln = lparts[n]
                for x, rv in rparts[m]:
                    lv = ln.get(x)
                    if not lv:
                        continue
                    for i, a in rv.items():
                        for j, b in lv.items():
                            parts[s], parts[s + 1] = i, j
                            axpy(out, {tjoin(parts, dims): a * b}, c)
            cur = out
        return cur

    def equal(self, u: Vec, v: Vec) -> bool:
        return not self.normal_form(sub(u, v))

    def is_zero(self, v: Vec) -> bool:
        return not self.normal_form(v)

    # -- quotient data
    def _image_space(self) -> Subspace:
        if self._image is None:
            if self.ambient_dim > max_dim():
                raise DimensionTooLarge(
                    f"quotient basis of ambient dimension {self.ambient_dim} exceeds HALG_MAX_DIM={max_dim()}")
            self._image = span((self.normal_form({J: ONE}) for J in range(self.ambient_dim)),
                               self.ambient_dim)
        return self._image

    @property
    def dim(self) -> int:
        if self._dim is None:
            if self.mode == "generic":
                self._dim = self.ambient_dim - self.relations().dim
            else:
                # the normal form is a projection, so its rank is its trace
                tr = 0
                for J in range(self.ambient_dim):
                    c = self.normal_form({J: ONE}).get(J)
                    if c is not None:
                        tr = c + tr
                t = tr if not isinstance(tr, int) else None
                self._dim = int(t.re) if t is not None else 0
        return self._dim

    def ambient_labels(self) -> list[str]:
        labels = [""]
        for f in self.factors:
            labels = [f"{a}⊗{b}" if a else b for a in labels for b in f.space.labels]
        return labels

    def quotient_data(self) -> tuple[FinSpace, LinMap, list[Vec]]:
        """(quotient space, projection from the plain tensor, representatives of quotient basis)."""
        if self._proj is None:
            amb = FinSpace(self.ambient_labels())
            if self.mode == "generic":
                q, p = quotient(amb, self.relations())
                piv = set(self.relations().pivots)
                reps = [{j: ONE} for j in range(self.ambient_dim) if j not in piv]
            else:
                img = self._image_space()
                q = FinSpace([amb.labels[p] for p in img.pivots])
                cols = []
                for J in range(self.ambient_dim):
                    nf = self.normal_form({J: ONE})
                    cols.append({i: nf[p] for i, p in enumerate(img.pivots) if p in nf})
                p = LinMap(amb, q, cols)
                reps = [dict(b) for b in img.basis]
            self._proj = (q, p, reps)
        return self._proj

    @property
    def space(self) -> FinSpace:
        return self.quotient_data()[0]

    @property
    def proj(self) -> LinMap:
        return self.quotient_data()[1]

    def coords(self, v: Vec) -> Vec:
        return self.proj(v)

    def show(self, v: Vec) -> str:
        return show(v, self.ambient_labels()) if self.ambient_dim <= 20000 else repr(v)

    def bimodule(self) -> Bimodule:
        """Induced (first left algebra, last right algebra)-bimodule on the quotient."""
        q, p, reps = self.quotient_data()
        first, last = self.factors[0], self.factors[-1]
        k = len(self.dims)
        left = []
        for a in range(first.left_alg.dim):
            maps = [first.left[a]] + [None] * (k - 1)
            left.append(LinMap(q, q, [p(tensor_apply(maps, r, self.dims, self.dims)) for r in reps]))
        right = []
        for b in range(last.right_alg.dim):
            maps = [None] * (k - 1) + [last.right[b]]
            right.append(LinMap(q, q, [p(tensor_apply(maps, r, self.dims, self.dims)) for r in reps]))
        return Bimodule(q, first.left_alg, last.right_alg, left, right, "balanced tensor")


def balanced_tensor(m: Bimodule, n: Bimodule, mode: str | None = None) -> BalancedTensor:
    return BalancedTensor([m, n], mode)


# ---------------------------------------------------------------- Takeuchi subspaces

@dataclass
class TakeuchiSpace:
    tensor: BalancedTensor
    subspace: Subspace           # in quotient coordinates
    condition: Callable[[Vec], Vec | None]

    @property
    def dim(self) -> int:
        return self.subspace.dim

    def contains(self, v: Vec) -> bool:
        return self.condition(v) is None


def _commuting_images(H: Algebra, s: LinMap, t: LinMap):
    for i in range(s.domain.dim):
        for j in range(t.domain.dim):
            x, y = s.cols[i], t.cols[j]
            if H.mul(x, y) != H.mul(y, x):
                return i, j
    return None


def takeuchi_condition(H: Algebra, A: Algebra, s: LinMap, t: LinMap, bt: BalancedTensor,
                       side: str) -> Callable[[Vec], Vec | None]:
    """Membership test returning None, or the basis index of A witnessing failure."""
    def cond(v: Vec):
        for a in range(A.dim):
            if side == "left":
                lhs = slot_mul(H, v, 0, t.cols[a], "R", 2)
                rhs = slot_mul(H, v, 1, s.cols[a], "R", 2)
            else:
                lhs = slot_mul(H, v, 0, s.cols[a], "L", 2)
                rhs = slot_mul(H, v, 1, t.cols[a], "L", 2)
            if not bt.equal(lhs, rhs):
                return a
        return None
    return cond


def _takeuchi(H, A, s, t, bt, side):
    bad = _commuting_images(H, s, t)
    if bad is not None:
        i, j = bad
        raise ValueError(f"images of s and t do not commute: s({A.labels[i]}), t({A.labels[j]})")
    q, p, reps = bt.quotient_data()
    cols = []
    for r in reps:
        stacked: Vec = {}
        for a in range(A.dim):
            if side == "left":
                d = sub(slot_mul(H, r, 0, t.cols[a], "R", 2), slot_mul(H, r, 1, s.cols[a], "R", 2))
            else:
                d = sub(slot_mul(H, r, 0, s.cols[a], "L", 2), slot_mul(H, r, 1, t.cols[a], "L", 2))
            for i, c in p(d).items():
                stacked[a * q.dim + i] = c
        cols.append(stacked)
    f = LinMap(q, FinSpace(A.dim * q.dim), cols)
    return TakeuchiSpace(bt, kernel(f), takeuchi_condition(H, A, s, t, bt, side))


def h_bimodule_left(H: Algebra, A: Algebra, s: LinMap, t: LinMap) -> Bimodule:
    """a1·h·a2 = s(a1) t(a2) h."""
    return algebra_bimodule(H, A, s, "L", A, t, "L", "left structure")


def h_bimodule_right(H: Algebra, A: Algebra, s: LinMap, t: LinMap) -> Bimodule:
    """a1·h·a2 = h t(a1) s(a2)."""
    return algebra_bimodule(H, A, t, "R", A, s, "R", "right structure")


def takeuchi_left(H: Algebra, A: Algebra, s: LinMap, t: LinMap) -> TakeuchiSpace:
    """{Σ h⊗h' : Σ h t(a) ⊗ h' = Σ h ⊗ h' s(a)} inside H ⊗_A H."""
    M = h_bimodule_left(H, A, s, t)
    return _takeuchi(H, A, s, t, BalancedTensor([M, M]), "left")


def takeuchi_right(H: Algebra, A: Algebra, s: LinMap, t: LinMap) -> TakeuchiSpace:
    """{Σ h⊗h' : Σ s(a) h ⊗ h' = Σ h ⊗ t(a) h'} inside H ⊗_A H (right structure)."""
    M = h_bimodule_right(H, A, s, t)
    return _takeuchi(H, A, s, t, BalancedTensor([M, M]), "right")


def takeuchi_closure(H: Algebra, ts: TakeuchiSpace) -> tuple[bool, bool]:
    """(contains 1⊗1, closed under factorwise multiplication)."""
    bt = ts.tensor
    q, p, reps = bt.quotient_data()
    one = {}
    for i, a in H.unit.items():
        for j, b in H.unit.items():
            one[i * H.dim + j] = a * b
    has_one = ts.subspace.contains(p(one))
    vecs = [bt.normal_form(_rep(ts, reps, b))
            for b in ts.subspace.basis]
    closed = True
    for u in vecs:
        for v in vecs:
            if not ts.subspace.contains(p(tmul(H, u, v, 2))):
                closed = False
                break
        if not closed:
            break
    return has_one, closed


def _rep(ts: TakeuchiSpace, reps: list[Vec], coords: Vec) -> Vec:
    out: Vec = {}
    for i, c in coords.items():
        axpy(out, reps[i], c)
    return out


# ---------------------------------------------------------------- descent

@dataclass
class Descent:
    ok: bool
    map: LinMap | None = None
    witness: str | None = None


def descends(f: LinMap, t: BalancedTensor, target: BalancedTensor | None = None) -> Descent:
    """Whether f (on the plain tensor) kills every balancing relation of t.

    With a target balanced tensor, images are compared in the target quotient.
    """
    for r, (s, a, J) in t.relation_vectors():
        img = f(r)
        if target is not None:
            img = target.normal_form(img)
        if img:
            labels = t.ambient_labels() if t.ambient_dim <= 20000 else None
            where = labels[J] if labels else str(J)
            alg = t.factors[s].right_alg
            return Descent(False, None, f"relation at {where} with {alg.labels[a]} in slot {s} "
                                        f"maps to a nonzero element")
    q, p, reps = t.quotient_data()
    if target is None:
        cols = [f(r) for r in reps]
        cod = f.codomain
    else:
        tq, tp, _ = target.quotient_data()
        cols = [tp(f(r)) for r in reps]
        cod = tq
    return Descent(True, LinMap(q, cod, cols, f.antilinear))
