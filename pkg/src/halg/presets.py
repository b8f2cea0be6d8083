"""String ids for the shipped constructions."""

from __future__ import annotations

from .algebra import Algebra, function_algebra, ground_field, group_algebra, group_by_name, matrix_algebra
from .calculus import finite_set_bialgebroid, groupoid_calculus
from .constructors import connes_moscovici, convolution_algebroid, enveloping_algebroid, permutation_action
from .groupoid import groupoid_preset, parse_action
from .linalg import LinMap

PRESET_HELP = """\
unit:n  pair:n  point:<group>  action:<group>:<perm>     convolution algebroid of a finite groupoid
enveloping:<alg>                                         A⊗A^op over A (alg: k, C<n>, M<n>, or a group name)
cm:<group>:<alg>[:<perm>]                                bicrossed product of a group algebra and C<n> or k
calculus:<groupoid>                                      universal calculus of degree ≤ 2 with a groupoid acting
finite1forms:n                                           bialgebroid acting on 1-forms of an n-point set
toykahler  kodaira-thurston  laplacian                   hermitian fixtures
groups: Z<n>, S<n>, trivial;  perms: swap<n>, cycle<n>, natural, or images of r1 like 1,2,0"""


class UnknownPreset(ValueError):
    pass


def algebra_preset(name: str) -> Algebra:
    name = name.strip()
    if name in ("k", "ground"):
        return ground_field()
    if name.startswith("C") and name[1:].isdigit():
        return function_algebra(int(name[1:]))
    if name.startswith("M") and name[1:].isdigit():
        return matrix_algebra(int(name[1:]))
    try:
        names, table = group_by_name(name)
    except ValueError:
        raise UnknownPreset(f"unknown algebra {name!r} (use k, C<n>, M<n> or a group)") from None
    return group_algebra(table, names)


def _cm(rest: str):
    parts = rest.split(":")
    if len(parts) not in (2, 3):
        raise UnknownPreset("cm presets look like cm:<group>:<alg>[:<perm>]")
    gname, aname = parts[0], parts[1]
    names, table = group_by_name(gname)
    q = group_algebra(table, names)
    a = algebra_preset(aname)
    if aname in ("k", "ground"):
        act = [LinMap.identity(a.space) for _ in names]
    elif aname.startswith("C") and aname[1:].isdigit():
        n = int(aname[1:])
        if len(parts) == 3:
            spec = parts[2]
        elif gname.lstrip("ℤ/").startswith("S"):
            spec = "natural"
        else:
            spec = f"swap{n}" if len(names) == 2 else f"cycle{n}"
        perms = parse_action(names, table, spec)
        if any(len(p) != n for p in perms):
            raise UnknownPreset(f"permutation spec {spec!r} does not act on {n} points")
        act = permutation_action(q, perms, n)
    else:
        raise UnknownPreset("cm presets act on C<n> or k")
    return connes_moscovici(q, a, act)


def build_preset(pid: str):
    """The Python object behind a preset id."""
    from .kahler import kahler_fixture
    pid = pid.strip()
    kind, _, rest = pid.partition(":")
    try:
        if kind in ("unit", "pair", "point", "action"):
            return convolution_algebroid(groupoid_preset(pid))
        if kind == "enveloping":
            return enveloping_algebroid(algebra_preset(rest))
        if kind == "cm":
            return _cm(rest)
        if kind == "calculus":
            return groupoid_calculus(rest, 2)[0]
        if kind == "finite1forms":
            n = int(rest)
            if n < 1:
                raise UnknownPreset("finite1forms needs n ≥ 1")
            return finite_set_bialgebroid(n)[2]
        if pid in ("toykahler", "kodaira-thurston", "laplacian"):
            return kahler_fixture(pid)
    except UnknownPreset:
        raise
    except (ValueError, IndexError) as e:
        raise UnknownPreset(f"bad preset {pid!r}: {e}") from None
    raise UnknownPreset(f"unknown preset {pid!r}")
