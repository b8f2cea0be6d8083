"""Command line: check spec files, construct presets, list invariant forms.

Exit codes: 0 all checks pass, 1 some check fails, 2 malformed input or unknown preset.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .hopf import HopfAlgebroid, LeftBialgebroid, StarHopfAlgebroid
from .linalg import show
from .report import CheckReport
from .scalar import parse_scalar
from .serial import FORMAT, VERSION, SpecError, decode, enc_calculus, enc_hopf, enc_kahler, enc_vec

REPORT_FORMAT = "halg-report"


# ---------------------------------------------------------------- loading

def load_spec(path: str | Path) -> dict:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError(f"cannot read file: {e.strerror}", str(p)) from None
    if not text.strip():
        raise SpecError("empty file", str(p))
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise SpecError(e.msg, f"{p}: line {e.lineno} column {e.colno}") from None
    if not isinstance(doc, dict):
        raise SpecError("top level must be an object", str(p))
    if doc.get("format") != FORMAT:
        raise SpecError(f"expected format {FORMAT!r}", f"{p}: format")
    if doc.get("version") != VERSION:
        raise SpecError(f"unsupported version {doc.get('version')!r}", f"{p}: version")
    if doc.get("scalars", "gaussian-rational") != "gaussian-rational":
        raise SpecError("only gaussian-rational scalars are supported", f"{p}: scalars")
    if not isinstance(doc.get("structures"), dict) or not doc["structures"]:
        raise SpecError("needs a non-empty 'structures' object", str(p))
    checks = doc.get("checks")
    if not isinstance(checks, list):
        raise SpecError("needs a 'checks' list", str(p))
    for k, ch in enumerate(checks):
        where = f"checks[{k}]"
        if not isinstance(ch, dict) or "suite" not in ch or "target" not in ch:
            raise SpecError("each check needs 'suite' and 'target'", where)
        if ch["suite"] not in SUITES:
            raise SpecError(f"unknown suite {ch['suite']!r} (known: {', '.join(SUITES)})", where)
        if ch["target"] not in doc["structures"]:
            raise SpecError(f"unresolved reference {ch['target']!r}", where)
    return doc


class Resolver:
    """Decodes structures on first use so a spec file only pays for what its checks touch."""

    def __init__(self, doc: dict):
        self.doc = doc
        self.cache: dict = {}

    def __call__(self, name: str):
        if name not in self.cache:
            self.cache[name] = decode(self.doc["structures"][name], f"structures.{name}")
        return self.cache[name]


# ---------------------------------------------------------------- suites

def _as_hopf(obj, where):
    from .kahler import KahlerFixture
    if isinstance(obj, (HopfAlgebroid, StarHopfAlgebroid)):
        return obj
    if isinstance(obj, KahlerFixture):
        obj = obj.c
    if hasattr(obj, "h") and isinstance(obj.h, (HopfAlgebroid, StarHopfAlgebroid)):
        return obj.h
    raise SpecError("target is not a Hopf algebroid", where)


def _as_left(obj, where):
    from .calculus import FiniteSetBialgebroid
    if isinstance(obj, FiniteSetBialgebroid):
        return obj.left
    if isinstance(obj, LeftBialgebroid):
        return obj
    if hasattr(obj, "left") and isinstance(obj.left, LeftBialgebroid):
        return obj.left
    if hasattr(obj, "h"):
        return _as_left(obj.h, where)
    if hasattr(obj, "c"):
        return _as_left(obj.c, where)
    raise SpecError("target carries no left bialgebroid", where)


def _as_calculus(obj, where):
    from .calculus import CovariantCalculus, FiniteSetBialgebroid
    from .kahler import KahlerFixture
    if isinstance(obj, CovariantCalculus):
        return obj
    if isinstance(obj, KahlerFixture):
        return obj.c
    if isinstance(obj, FiniteSetBialgebroid):
        return obj.calculus()
    raise SpecError("target is not a calculus", where)


def _as_kahler(obj, where):
    from .kahler import KahlerFixture
    if isinstance(obj, KahlerFixture):
        return obj
    raise SpecError("target is not a hermitian fixture", where)


def suite_hopf(obj, where):
    from .hopf import derived_identities, verify_hopf, verify_left_bialgebroid, verify_right_bialgebroid
    h = _as_hopf(obj, where)
    core = h.core if isinstance(h, StarHopfAlgebroid) else h
    return [verify_left_bialgebroid(core.left), verify_right_bialgebroid(core.right), verify_hopf(core),
            derived_identities(core)]


def suite_star(obj, where):
    from .hopf import verify_star
    h = _as_hopf(obj, where)
    if not isinstance(h, StarHopfAlgebroid):
        raise SpecError("target carries no involution", where)
    return [verify_star(h)]


def suite_left(obj, where):
    from .hopf import verify_left_bialgebroid
    return [verify_left_bialgebroid(_as_left(obj, where))]


def suite_uniqueness(obj, where):
    from .hopf import antipode_uniqueness, counit_uniqueness
    h = _as_hopf(obj, where)
    core = h.core if isinstance(h, StarHopfAlgebroid) else h
    return [counit_uniqueness(core.left), counit_uniqueness(core.right), antipode_uniqueness(core)]


def suite_dga(obj, where):
    from .calculus import verify_dga
    return [verify_dga(_as_calculus(obj, where).dga)]


def suite_calculus(obj, where):
    from .calculus import verify_covariant_calculus
    return [verify_covariant_calculus(_as_calculus(obj, where))]


def suite_covariance(obj, where):
    from .calculus import verify_covariant_calculus
    return [verify_covariant_calculus(_as_calculus(obj, where), module_algebra=False)]


def suite_invariant_forms(obj, where):
    from .calculus import invariant_forms
    return [invariant_forms(_as_calculus(obj, where))[1]]


def suite_action_differential(obj, where):
    from .calculus import eq434_check
    return [eq434_check(_as_calculus(obj, where))]


def suite_finite_set(obj, where):
    from .calculus import FiniteSetBialgebroid, verify_finite_set
    if not isinstance(obj, FiniteSetBialgebroid):
        raise SpecError("finite-set needs a finite1forms preset", where)
    return [verify_finite_set(obj)]


def suite_kahler(obj, where):
    return [_as_kahler(obj, where).suite()]


SUITES = {
    "hopf": suite_hopf,
    "star": suite_star,
    "left-bialgebroid": suite_left,
    "uniqueness": suite_uniqueness,
    "dga": suite_dga,
    "calculus": suite_calculus,
    "covariance": suite_covariance,
    "invariant-forms": suite_invariant_forms,
    "action-differential": suite_action_differential,
    "finite-set": suite_finite_set,
    "kahler": suite_kahler,
}


def _errored(name: str, exc: Exception) -> CheckReport:
    rep = CheckReport(name)
    rep.check("suite-error", "the suite ran to completion", False, f"{type(exc).__name__}: {exc}")
    rep.info["errored"] = True
    return rep.done()


def run_check(doc: dict, k: int, resolver: Resolver | None = None) -> list[dict]:
    """Run the k-th check; SpecError propagates, other failures become an errored report."""
    resolver = resolver or Resolver(doc)
    ch = doc["checks"][k]
    where = f"checks[{k}]"
    obj = resolver(ch["target"])
    try:
        reps = SUITES[ch["suite"]](obj, where)
    except SpecError:
        raise
    except Exception as e:  # a crashing suite is a failure of that suite, not of the run
        reps = [_errored(f"{ch['suite']} {ch['target']}", e)]
    out = []
    for r in reps:
        d = r.to_dict()
        d["check"] = k
        d["target"] = ch["target"]
        out.append(d)
    return out


def _worker(path: str, k: int) -> list[dict]:
    return run_check(load_spec(path), k)


def check_file(path: str | Path, jobs: int = 1) -> dict:
    """Structured report for a spec file; raises SpecError on malformed input."""
    doc = load_spec(path)
    n = len(doc["checks"])
    if jobs > 1 and n > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_worker, [str(path)] * n, range(n)))
    else:
        res = Resolver(doc)
        parts = [run_check(doc, k, res) for k in range(n)]
    suites = [r for part in parts for r in part]
    return {"format": REPORT_FORMAT, "version": VERSION, "source": Path(path).name,
            "passed": all(s["passed"] for s in suites), "suites": suites}


def report_text(report: dict) -> str:
    lines = []
    for s in report["suites"]:
        items = s["items"]
        width = max((len(it["axiom"]) for it in items), default=10)
        lines.append(f"[{'PASS' if s['passed'] else 'FAIL'}] {s['suite']}  (target {s['target']})")
        for it in items:
            lines.append(f"  {'ok  ' if it['passed'] else 'FAIL'} {it['axiom'].ljust(width)}  {it['statement']}")
            if "witness" in it:
                lines.append(f"       witness: {it['witness']}")
        for k, v in s.get("info", {}).items():
            lines.append(f"  info {k}: {v}")
    failed = [f"{s['suite']}: {it['axiom']}" for s in report["suites"] for it in s["items"] if not it["passed"]]
    lines.append("")
    lines.append(f"{'PASS' if report['passed'] else 'FAIL'}: {len(report['suites'])} suites, {len(failed)} failing items")
    return "\n".join(lines)


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False, indent=2, default=str) + "\n"


# ---------------------------------------------------------------- construct

DEFAULT_CHECKS = {
    "hopf-algebroid": ["hopf", "star"],
    "calculus": ["dga", "covariance", "invariant-forms"],
    "finite1forms": ["left-bialgebroid", "dga", "covariance"],
    "kahler": ["kahler"],
}


def construct_doc(pid: str) -> dict:
    from .calculus import CovariantCalculus, FiniteSetBialgebroid
    from .kahler import KahlerFixture
    from .presets import build_preset
    obj = build_preset(pid)
    if isinstance(obj, (HopfAlgebroid, StarHopfAlgebroid)):
        struct = enc_hopf(obj)
        checks = list(DEFAULT_CHECKS["hopf-algebroid"]) if isinstance(obj, StarHopfAlgebroid) else ["hopf"]
    elif isinstance(obj, FiniteSetBialgebroid):
        c = obj.calculus()
        struct = enc_calculus(c, with_h0=True)
        checks = DEFAULT_CHECKS["finite1forms"]
    elif isinstance(obj, CovariantCalculus):
        struct = enc_calculus(obj)
        checks = DEFAULT_CHECKS["calculus"]
    elif isinstance(obj, KahlerFixture):
        struct = enc_kahler(obj)
        checks = DEFAULT_CHECKS["kahler"]
    else:  # pragma: no cover - every preset maps to one of the above
        raise SpecError(f"preset {pid!r} has no serializer")
    struct["preset"] = pid
    return {"format": FORMAT, "version": VERSION, "scalars": "gaussian-rational",
            "structures": {"main": struct},
            "checks": [{"suite": s, "target": "main"} for s in checks]}


# ---------------------------------------------------------------- invariants

def invariants_of(obj) -> dict:
    from .actions import base_module, invariants
    from .calculus import CovariantCalculus, FiniteSetBialgebroid, invariant_forms
    from .kahler import KahlerFixture
    if isinstance(obj, KahlerFixture):
        obj = obj.c
    if isinstance(obj, FiniteSetBialgebroid):
        obj = obj.calculus()
    if isinstance(obj, CovariantCalculus):
        sub_, _ = invariant_forms(obj)
        dga = obj.dga
        out = {"kind": "invariant forms", "degrees": []}
        for k in range(dga.graded.top + 1):
            comp = dga.graded.component(k)
            part = sub_.intersect(comp)
            out["degrees"].append({"degree": k, "dim": part.dim, "ambient dim": comp.dim,
                                   "basis": [enc_vec(v, dga.alg.space) for v in part.basis]})
        return out
    if isinstance(obj, (HopfAlgebroid, StarHopfAlgebroid, LeftBialgebroid)):
        m = base_module(obj)
        sub_ = invariants(m)
        return {"kind": "base invariants", "dim": sub_.dim, "ambient dim": m.dim,
                "basis": [enc_vec(v, m.space) for v in sub_.basis]}
    raise SpecError("structure carries no action")


def invariants_text(inv: dict) -> str:
    if inv["kind"] == "base invariants":
        lines = [f"B_H: dim {inv['dim']} of {inv['ambient dim']}"]
        lines += [f"  {_fmt(v)}" for v in inv["basis"]]
        return "\n".join(lines)
    lines = []
    for d in inv["degrees"]:
        lines.append(f"degree {d['degree']}: dim {d['dim']} of {d['ambient dim']}")
        lines += [f"  {_fmt(v)}" for v in d["basis"]]
    return "\n".join(lines)


def _fmt(v: dict) -> str:
    labels = list(v)
    return show({i: parse_scalar(v[lab]) for i, lab in enumerate(labels)}, labels)


# ---------------------------------------------------------------- entry points

def cmd_check(path, fmt: str = "text", out: str | None = None, jobs: int = 1, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        report = check_file(path, jobs)
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    text = dumps(report) if fmt == "json" else report_text(report) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stream.write(text)
    return 0 if report["passed"] else 1


def cmd_construct(pid: str, out: str, stream=None) -> int:
    from .presets import PRESET_HELP, UnknownPreset
    stream = stream or sys.stdout
    try:
        doc = construct_doc(pid)
    except UnknownPreset as e:
        print(f"error: {e}\nknown presets:\n{PRESET_HELP}", file=sys.stderr)
        return 2
    Path(out).write_text(dumps(doc), encoding="utf-8")
    st = doc["structures"]["main"]
    extra = f", dim H {st['dim H']}" if "dim H" in st else ""
    extra += f", dim H0 {st['dim H0']}" if "dim H0" in st else ""
    stream.write(f"wrote {st['kind']} {pid}{extra} to {out}\n")
    return 0


def cmd_invariants(path, sid: str, fmt: str = "text", stream=None) -> int:
    stream = stream or sys.stdout
    try:
        doc = load_spec(path)
        if sid not in doc["structures"]:
            raise SpecError(f"unresolved reference {sid!r}", "--id")
        inv = invariants_of(Resolver(doc)(sid))
    except SpecError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    stream.write(dumps(inv) if fmt == "json" else invariants_text(inv) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    from .presets import PRESET_HELP
    p = argparse.ArgumentParser(prog="halg", description="Exact Hopf algebroid and Kähler structure checks.",
                                formatter_class=argparse.RawDescriptionHelpFormatter,
                                epilog="presets:\n" + PRESET_HELP)
    sub = p.add_subparsers(dest="cmd", required=True)
    c = sub.add_parser("check", help="run the checks listed in a spec file")
    c.add_argument("file")
    c.add_argument("--format", choices=["text", "json"], default="text")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--jobs", type=int, default=1, help="run checks in this many processes")
    k = sub.add_parser("construct", help="serialize a preset as a spec file")
    k.add_argument("preset")
    k.add_argument("--out", required=True)
    i = sub.add_parser("invariants", help="invariant forms or base invariants of a structure")
    i.add_argument("file")
    i.add_argument("--id", required=True, dest="sid")
    i.add_argument("--format", choices=["text", "json"], default="text")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.cmd == "check":
        return cmd_check(args.file, args.format, args.out, args.jobs)
    if args.cmd == "construct":
        return cmd_construct(args.preset, args.out)
    return cmd_invariants(args.file, args.sid, args.format)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
