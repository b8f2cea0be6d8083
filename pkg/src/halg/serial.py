"""JSON encoding of structures: basis-indexed structure constants, scalars as exact strings."""

from __future__ import annotations

from typing import Any

from .algebra import Algebra
from .calculus import DGA, CovariantCalculus, GradedAlgebra, State
from .hopf import HopfAlgebroid, LeftBialgebroid, RightBialgebroid, StarHopfAlgebroid
from .linalg import FinSpace, LinMap, Subspace, Vec, tensor_space
from .scalar import format_scalar, parse_scalar

FORMAT = "halg-spec"
VERSION = 1


class SpecError(ValueError):
    """Malformed input; `where` is a JSON path or a line/column position."""

    def __init__(self, msg: str, where: str = ""):
        super().__init__(f"{where}: {msg}" if where else msg)
        self.where = where


# ---------------------------------------------------------------- encoding

def enc_vec(v: Vec, sp: FinSpace) -> dict:
    return {sp.labels[i]: format_scalar(v[i]) for i in sorted(v) if v[i]}


def enc_map(f: LinMap, cod: FinSpace | None = None) -> dict:
    cod = cod or f.codomain
    d: dict[str, Any] = {"cols": {f.domain.labels[j]: enc_vec(c, cod) for j, c in enumerate(f.cols) if c}}
    if f.antilinear:
        d["antilinear"] = True
    return d


def enc_algebra(a: Algebra) -> dict:
    table = []
    for i in range(a.dim):
        for j in range(a.dim):
            if a.table[i][j]:
                table.append([a.labels[i], a.labels[j], enc_vec(a.table[i][j], a.space)])
    d = {"name": a.name, "labels": list(a.labels), "unit": enc_vec(a.unit, a.space), "table": table}
    if a.star is not None:
        d["star"] = enc_map(a.star)
    return d


def _enc_bialg(b) -> dict:
    # the coproduct lands in H⊗H with index i*dim + j; name its basis by the tensor labels
    return {"s": enc_map(b.s), "t": enc_map(b.t), "delta": enc_map(b.delta, tensor_space(b.H.space, b.H.space)),
            "eps": enc_map(b.eps)}


def enc_left_bialgebroid(b: LeftBialgebroid) -> dict:
    return {"kind": "left-bialgebroid", "name": b.name, "H": enc_algebra(b.H), "A": enc_algebra(b.A),
            "left": _enc_bialg(b)}


def enc_hopf(h) -> dict:
    sh = h if isinstance(h, StarHopfAlgebroid) else None
    core = sh.core if sh else h
    d = {"kind": "hopf-algebroid", "name": core.name, "dim H": core.H.dim,
         "H": enc_algebra(core.H), "Al": enc_algebra(core.left.A), "Ar": enc_algebra(core.right.A),
         "left": _enc_bialg(core.left), "right": _enc_bialg(core.right), "S": enc_map(core.S)}
    if sh is not None:
        d["star"] = {"H": enc_map(sh.star_H), "Al": enc_map(sh.star_Al), "Ar": enc_map(sh.star_Ar)}
    return d


def enc_symmetry(h) -> dict:
    if isinstance(h, LeftBialgebroid):
        return enc_left_bialgebroid(h)
    return enc_hopf(h)


def enc_calculus(c: CovariantCalculus, with_h0: bool = False) -> dict:
    dga = c.dga
    sp = dga.alg.space
    d = {"kind": "calculus", "name": c.name, "forms": enc_algebra(dga.alg),
         "degree": {sp.labels[i]: k for i, k in enumerate(dga.graded.degree)},
         "d": enc_map(dga.d)}
    if dga.star is not None:
        d["star"] = enc_map(dga.star)
    if c.module is not None:
        d["symmetry"] = enc_symmetry(c.h)
        H = c.module.H
        d["action"] = {H.labels[h]: enc_map(c.module.act[h]) for h in range(H.dim)}
    if with_h0:
        d["h0"] = [enc_vec(v, c.module.H.space) for v in c.h0.basis]
        d["dim H0"] = c.h0.dim
        d["dim H"] = c.module.H.dim
    return d


def enc_kahler(fx) -> dict:
    dga = fx.c.dga
    sp = dga.alg.space
    comps = {f"{a},{b}": [enc_vec(v, sp) for v in s.basis] for (a, b), s in sorted(fx.bg.components.items())}
    return {"kind": "kahler", "name": fx.name, "calculus": enc_calculus(fx.c), "bigrading": comps,
            "sigma": enc_vec(fx.sigma, sp), "vol": enc_map(fx.vol),
            "tau": {sp.labels[i]: format_scalar(col[0]) for i, col in enumerate(fx.tau.functional.cols) if col}}


# ---------------------------------------------------------------- decoding

def _need(d: dict, key: str, where: str):
    if not isinstance(d, dict):
        raise SpecError("expected an object", where)
    if key not in d:
        raise SpecError(f"missing field {key!r}", where)
    return d[key]


def dec_scalar(x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise SpecError(f"scalar must be a string 'p/q+r/s*i' or an integer, got {x!r}", where)
    try:
        return parse_scalar(str(x))
    except ValueError as e:
        raise SpecError(str(e), where) from None


def dec_vec(d, sp: FinSpace, where: str) -> Vec:
    if not isinstance(d, dict):
        raise SpecError("vector must be an object label -> scalar", where)
    out: Vec = {}
    for lab, x in d.items():
        if lab not in sp.labels:
            raise SpecError(f"unknown basis label {lab!r}", where)
        s = dec_scalar(x, f"{where}.{lab}")
        if s:
            out[sp.index(lab)] = s
    return out


def dec_map(d, dom: FinSpace, cod: FinSpace, where: str) -> LinMap:
    cols_in = _need(d, "cols", where)
    if not isinstance(cols_in, dict):
        raise SpecError("cols must be an object", where)
    cols: list[Vec] = [{} for _ in range(dom.dim)]
    for lab, v in cols_in.items():
        if lab not in dom.labels:
            raise SpecError(f"unknown domain label {lab!r}", f"{where}.cols")
        cols[dom.index(lab)] = dec_vec(v, cod, f"{where}.cols.{lab}")
    return LinMap(dom, cod, cols, antilinear=bool(d.get("antilinear", False)))


def dec_algebra(d, where: str) -> Algebra:
    labels = _need(d, "labels", where)
    try:
        sp = FinSpace(labels)
    except ValueError as e:
        raise SpecError(str(e), f"{where}.labels") from None
    n = sp.dim
    table: list[list[Vec]] = [[{} for _ in range(n)] for _ in range(n)]
    for k, entry in enumerate(_need(d, "table", where)):
        w = f"{where}.table[{k}]"
        if not isinstance(entry, list) or len(entry) != 3:
            raise SpecError("table entries are [left label, right label, product]", w)
        a, b, v = entry
        if a not in sp.labels or b not in sp.labels:
            raise SpecError(f"unknown label in product {a!r}·{b!r}", w)
        table[sp.index(a)][sp.index(b)] = dec_vec(v, sp, w)
    alg = Algebra(sp, table, dec_vec(_need(d, "unit", where), sp, f"{where}.unit"), d.get("name", ""))
    if "star" in d:
        alg.star = dec_map(d["star"], sp, sp, f"{where}.star")
    return alg


def _dec_bialg(d, H: Algebra, A: Algebra, where: str) -> dict:
    HH = tensor_space(H.space, H.space)
    return {"s": dec_map(_need(d, "s", where), A.space, H.space, f"{where}.s"),
            "t": dec_map(_need(d, "t", where), A.space, H.space, f"{where}.t"),
            "delta": dec_map(_need(d, "delta", where), H.space, HH, f"{where}.delta"),
            "eps": dec_map(_need(d, "eps", where), H.space, A.space, f"{where}.eps")}


def dec_left_bialgebroid(d, where: str) -> LeftBialgebroid:
    H = dec_algebra(_need(d, "H", where), f"{where}.H")
    A = dec_algebra(_need(d, "A", where), f"{where}.A")
    return LeftBialgebroid(H, A, **_dec_bialg(_need(d, "left", where), H, A, f"{where}.left"),
                           name=d.get("name", ""))


def dec_hopf(d, where: str):
    H = dec_algebra(_need(d, "H", where), f"{where}.H")
    Al = dec_algebra(_need(d, "Al", where), f"{where}.Al")
    Ar = dec_algebra(_need(d, "Ar", where), f"{where}.Ar")
    name = d.get("name", "")
    left = LeftBialgebroid(H, Al, **_dec_bialg(_need(d, "left", where), H, Al, f"{where}.left"), name=name)
    right = RightBialgebroid(H, Ar, **_dec_bialg(_need(d, "right", where), H, Ar, f"{where}.right"), name=name)
    S = dec_map(_need(d, "S", where), H.space, H.space, f"{where}.S")
    core = HopfAlgebroid(left, right, S, name)
    if "star" not in d:
        return core
    st = d["star"]
    sh = dec_map(_need(st, "H", f"{where}.star"), H.space, H.space, f"{where}.star.H")
    sl = dec_map(_need(st, "Al", f"{where}.star"), Al.space, Al.space, f"{where}.star.Al")
    sr = dec_map(_need(st, "Ar", f"{where}.star"), Ar.space, Ar.space, f"{where}.star.Ar")
    H.star, Al.star, Ar.star = sh, sl, sr
    return StarHopfAlgebroid(core, sh, sl, sr)


def dec_symmetry(d, where: str):
    kind = _need(d, "kind", where)
    if kind == "left-bialgebroid":
        return dec_left_bialgebroid(d, where)
    if kind == "hopf-algebroid":
        return dec_hopf(d, where)
    raise SpecError(f"a symmetry must be a left-bialgebroid or hopf-algebroid, got {kind!r}", where)


def dec_calculus(d, where: str) -> CovariantCalculus:
    from .actions import HModule
    from .calculus import trivial_symmetry
    alg = dec_algebra(_need(d, "forms", where), f"{where}.forms")
    sp = alg.space
    deg_in = _need(d, "degree", where)
    missing = [lab for lab in sp.labels if lab not in deg_in]
    if missing:
        raise SpecError(f"no degree for {missing[0]!r}", f"{where}.degree")
    graded = GradedAlgebra(alg, [int(deg_in[lab]) for lab in sp.labels])
    dmap = dec_map(_need(d, "d", where), sp, sp, f"{where}.d")
    star = dec_map(d["star"], sp, sp, f"{where}.star") if "star" in d else None
    alg.star = star
    dga = DGA(graded, dmap, star, d.get("name", ""))
    if "symmetry" not in d:
        return trivial_symmetry(dga, d.get("name", ""))
    h = dec_symmetry(d["symmetry"], f"{where}.symmetry")
    H = h.H if not isinstance(h, LeftBialgebroid) else h.H
    act_in = _need(d, "action", where)
    acts = []
    for lab in H.labels:
        if lab not in act_in:
            raise SpecError(f"no action matrix for {lab!r}", f"{where}.action")
        acts.append(dec_map(act_in[lab], sp, sp, f"{where}.action.{lab}"))
    h0 = None
    if "h0" in d:
        h0 = Subspace(H.dim, [dec_vec(v, H.space, f"{where}.h0[{k}]") for k, v in enumerate(d["h0"])])
    return CovariantCalculus(dga, h, HModule(h, sp, acts, "forms"), h0=h0, name=d.get("name", ""))


def dec_kahler(d, where: str):
    from .kahler import Bigrading, KahlerFixture
    c = dec_calculus(_need(d, "calculus", where), f"{where}.calculus")
    dga = c.dga
    sp = dga.alg.space
    comps = {}
    for key, vs in _need(d, "bigrading", where).items():
        try:
            a, b = (int(x) for x in key.split(","))
        except ValueError:
            raise SpecError(f"bidegree keys look like 'a,b', got {key!r}", f"{where}.bigrading") from None
        comps[(a, b)] = Subspace(dga.dim, [dec_vec(v, sp, f"{where}.bigrading.{key}[{k}]")
                                           for k, v in enumerate(vs)])
    bg = Bigrading(dga, comps)
    sigma = dec_vec(_need(d, "sigma", where), sp, f"{where}.sigma")
    vol = dec_map(_need(d, "vol", where), sp, sp, f"{where}.vol")
    tw = dec_vec(_need(d, "tau", where), sp, f"{where}.tau")
    tau = State(LinMap(sp, FinSpace(["τ"]), [{0: tw[i]} if i in tw else {} for i in range(dga.dim)]))
    return KahlerFixture(c, bg, sigma, vol, tau, d.get("name", ""))


def decode(d, where: str):
    kind = _need(d, "kind", where)
    if kind == "hopf-algebroid":
        return dec_hopf(d, where)
    if kind == "left-bialgebroid":
        return dec_left_bialgebroid(d, where)
    if kind == "calculus":
        return dec_calculus(d, where)
    if kind == "kahler":
        return dec_kahler(d, where)
    if kind == "preset":
        from .presets import build_preset
        try:
            return build_preset(str(_need(d, "preset", where)))
        except (ValueError, KeyError) as e:
            raise SpecError(str(e), where) from None
    raise SpecError(f"unknown structure kind {kind!r}", where)
