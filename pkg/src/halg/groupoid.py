"""Finite groupoids with enumerated arrows and an explicit partial composition."""

from __future__ import annotations

from typing import Sequence

from .algebra import group_by_name, validate_group


class GroupoidError(ValueError):
    pass


class FiniteGroupoid:
    """Arrows g with src/tgt; comp[(g, h)] = gh is defined iff src(g) = tgt(h)."""

    def __init__(self, objects: Sequence[str], arrows: Sequence[str], src: Sequence[int],
                 tgt: Sequence[int], comp: dict, unit: Sequence[int], inv: Sequence[int],
                 name: str = ""):
        self.objects = list(objects)
        self.arrows = list(arrows)
        self.src = list(src)
        self.tgt = list(tgt)
        self.comp = dict(comp)
        self.unit = list(unit)
        self.inv = list(inv)
        self.name = name
        self.verify()

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_arrows(self) -> int:
        return len(self.arrows)

    def defined(self, g: int, h: int) -> bool:
        return self.src[g] == self.tgt[h]

    def mul(self, g: int, h: int) -> int | None:
        return self.comp.get((g, h))

    def verify(self):
        n = self.n_arrows
        lab = self.arrows
        for g in range(n):
            for h in range(n):
                if self.defined(g, h) != ((g, h) in self.comp):
                    raise GroupoidError(f"composition of {lab[g]}, {lab[h]} has wrong domain")
                k = self.comp.get((g, h))
                if k is not None and (self.src[k] != self.src[h] or self.tgt[k] != self.tgt[g]):
                    raise GroupoidError(f"{lab[g]}∘{lab[h]} has wrong endpoints")
        for (g, h), gh in self.comp.items():
            for k in range(n):
                if (h, k) in self.comp:
                    if self.comp.get((gh, k)) != self.comp.get((g, self.comp[(h, k)])):
                        raise GroupoidError(f"associativity fails at {lab[g]}, {lab[h]}, {lab[k]}")
        for x, u in enumerate(self.unit):
            if self.src[u] != x or self.tgt[u] != x:
                raise GroupoidError(f"unit at {self.objects[x]} is not a loop")
        for g in range(n):
            if self.comp.get((self.unit[self.tgt[g]], g)) != g or self.comp.get((g, self.unit[self.src[g]])) != g:
                raise GroupoidError(f"unit law fails at {lab[g]}")
            gi = self.inv[g]
            if self.comp.get((g, gi)) != self.unit[self.tgt[g]] or self.comp.get((gi, g)) != self.unit[self.src[g]]:
                raise GroupoidError(f"inverse law fails at {lab[g]}")

    def relabel(self, perm: Sequence[int]) -> FiniteGroupoid:
        """Transport along the object bijection x -> perm[x], keeping arrow order."""
        objs = [None] * self.n_objects
        for x, y in enumerate(perm):
            objs[y] = self.objects[x]
        return FiniteGroupoid(objs, self.arrows, [perm[x] for x in self.src], [perm[x] for x in self.tgt],
                              self.comp, [self.unit[perm.index(y)] for y in range(self.n_objects)],
                              self.inv, self.name + "'")

    def __repr__(self):
        return f"<FiniteGroupoid {self.name} |G0|={self.n_objects} |G1|={self.n_arrows}>"


def unit_groupoid(n: int) -> FiniteGroupoid:
    objs = [str(x) for x in range(n)]
    return FiniteGroupoid(objs, [f"1_{x}" for x in objs], range(n), range(n),
                          {(x, x): x for x in range(n)}, range(n), range(n), f"unit:{n}")


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrows (x,y) with target x and source y; (x,y)(y,z) = (x,z)."""
    objs = [str(x) for x in range(n)]
    idx = {(x, y): x * n + y for x in range(n) for y in range(n)}
    arrows = [f"({x},{y})" for x in range(n) for y in range(n)]
    comp = {(idx[x, y], idx[y, z]): idx[x, z] for x in range(n) for y in range(n) for z in range(n)}
    return FiniteGroupoid(objs, arrows, [y for x in range(n) for y in range(n)],
                          [x for x in range(n) for y in range(n)], comp,
                          [idx[x, x] for x in range(n)], [idx[y, x] for x in range(n) for y in range(n)],
                          f"pair:{n}")


def point_groupoid(names: Sequence[str], table: Sequence[Sequence[int]], name: str = "") -> FiniteGroupoid:
    ident, inv = validate_group(table)
    n = len(table)
    comp = {(a, b): table[a][b] for a in range(n) for b in range(n)}
    return FiniteGroupoid(["*"], names, [0] * n, [0] * n, comp, [ident], inv, name or "point")


def action_groupoid(names: Sequence[str], table: Sequence[Sequence[int]],
                    action: Sequence[Sequence[int]], name: str = "") -> FiniteGroupoid:
    """Translation groupoid: arrows (g, m) from m to g·m; (g,m)(g',m') = (gg', m') when m = g'm'.

    action[g] is the permutation m -> g·m of the points.
    """
    ident, inv = validate_group(table)
    ng = len(table)
    if len(action) != ng:
        raise GroupoidError("one permutation per group element is required")
    npts = len(action[0])
    for g, p in enumerate(action):
        if sorted(p) != list(range(npts)):
            raise GroupoidError(f"action of {names[g]} is not a bijection")
    for a in range(ng):
        for b in range(ng):
            for m in range(npts):
                if action[a][action[b][m]] != action[table[a][b]][m]:
                    raise GroupoidError(f"not an action at {names[a]}, {names[b]}")
    if list(action[ident]) != list(range(npts)):
        raise GroupoidError("identity does not act trivially")
    idx = {(g, m): g * npts + m for g in range(ng) for m in range(npts)}
    arrows = [f"({names[g]},{m})" for g in range(ng) for m in range(npts)]
    src = [m for g in range(ng) for m in range(npts)]
    tgt = [action[g][m] for g in range(ng) for m in range(npts)]
    comp = {}
    for g in range(ng):
        for m in range(npts):
            for g2 in range(ng):
                for m2 in range(npts):
                    if m == action[g2][m2]:
                        comp[idx[g, m], idx[g2, m2]] = idx[table[g][g2], m2]
    unit = [idx[ident, m] for m in range(npts)]
    inverse = [idx[inv[g], action[g][m]] for g in range(ng) for m in range(npts)]
    return FiniteGroupoid([str(m) for m in range(npts)], arrows, src, tgt, comp, unit, inverse,
                          name or "action")


def parse_action(names, table, spec: str) -> list[list[int]]:
    """Permutation spec: 'swap<n>' or 'cycle<n>' for a cyclic group's generator,
    'natural' for S_k on k points, or comma-separated images of the generator r1."""
    ng = len(table)
    spec = spec.strip()
    if spec == "natural":
        out = []
        for nm in names:
            if nm == "e":
                k = len(names[1]) if len(names) > 1 else 1
                out.append(list(range(k)))
            else:
                out.append([int(c) - 1 for c in nm])
        return out
    if spec.startswith("swap") and spec[4:].isdigit():
        n = int(spec[4:])
        gen = [1, 0] + list(range(2, n))
    elif spec.startswith("cycle") and spec[5:].isdigit():
        n = int(spec[5:])
        gen = [(m + 1) % n for m in range(n)]
    else:
        try:
            gen = [int(x) for x in spec.split(",")]
        except ValueError:
            raise GroupoidError(f"bad permutation spec {spec!r}") from None
    if "r1" not in names:
        raise GroupoidError("generator spec needs a cyclic group")
    ident, _ = validate_group(table)
    g1 = names.index("r1")
    out = [None] * ng
    cur, p = ident, list(range(len(gen)))
    for _ in range(ng):
        out[cur] = p
        cur = table[g1][cur]
        p = [gen[x] for x in p]
    if any(o is None for o in out):
        raise GroupoidError("group is not generated by r1")
    return out


def groupoid_preset(spec: str) -> FiniteGroupoid:
    kind, _, rest = spec.partition(":")
    if kind == "unit":
        return unit_groupoid(int(rest))
    if kind == "pair":
        return pair_groupoid(int(rest))
    if kind == "point":
        names, table = group_by_name(rest)
        return point_groupoid(names, table, spec)
    if kind == "action":
        gname, _, pspec = rest.partition(":")
        names, table = group_by_name(gname)
        return action_groupoid(names, table, parse_action(names, table, pspec), spec)
    raise GroupoidError(f"unknown groupoid preset {spec!r}")
