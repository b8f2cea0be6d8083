"""The shipped spec-file corpus: passing fixtures and corruptions with their documented failures."""

from __future__ import annotations

import copy
import json
from pathlib import Path

from .cli import construct_doc, dumps


def _with_checks(doc: dict, suites: list[str]) -> dict:
    doc = copy.deepcopy(doc)
    doc["checks"] = [{"suite": s, "target": "main"} for s in suites]
    return doc


def _main(doc: dict) -> dict:
    return doc["structures"]["main"]


def broken_antipode() -> dict:
    """pair:2 with S(δ_(x,y)) = (c_x/c_y) δ_(y,x), c = (1, 2): still an anti-automorphism, no longer an antipode."""
    doc = _with_checks(construct_doc("pair:2"), ["hopf"])
    st = _main(doc)
    st["S"]["cols"]["(0,1)"] = {"(1,0)": "1/2"}
    st["S"]["cols"]["(1,0)"] = {"(0,1)": "2"}
    st["name"] = "pair:2 with a twisted antipode"
    return doc


def swapped_counits() -> dict:
    """pair:2 with the left and right counits exchanged."""
    doc = _with_checks(construct_doc("pair:2"), ["hopf"])
    st = _main(doc)
    st["left"]["eps"], st["right"]["eps"] = st["right"]["eps"], st["left"]["eps"]
    st["name"] = "pair:2 with swapped counits"
    return doc


def linear_star() -> dict:
    """point:Z4 with the involution on H declared complex linear."""
    doc = _with_checks(construct_doc("point:Z4"), ["star"])
    st = _main(doc)
    st["star"]["H"].pop("antilinear", None)
    st["name"] = "point:Z4 with a linear involution"
    return doc


def degree_shifting_action() -> dict:
    """Z2 swap on the universal calculus with every action matrix conjugated by P = 1 + N, N: e01 ↦ e010.

    N² = 0, so P⁻¹ = 1 − N and the result is still an H-module; only the grading breaks.
    """
    from .calculus import groupoid_calculus
    from .linalg import LinMap
    from .scalar import ONE
    from .serial import enc_map
    c, _, _ = groupoid_calculus("action:Z2:swap2", 2)
    sp = c.dga.alg.space
    N = LinMap(sp, sp, [{sp.index("e010"): ONE} if lab == "e01" else {} for lab in sp.labels])
    one = LinMap.identity(sp)
    P, Pinv = one + N, one - N
    doc = _with_checks(construct_doc("calculus:action:Z2:swap2"), ["covariance"])
    st = _main(doc)
    H = c.module.H
    st["action"] = {H.labels[h]: enc_map(P @ c.module.act[h] @ Pinv) for h in range(H.dim)}
    st["name"] = "swap calculus with a degree-shifting action"
    return doc


def leaking_bigrading() -> dict:
    """Toy Kähler cell with Ω^(1,0) = span(e10 + e01), Ω^(0,1) = span(e10 − e01): the involution leaks."""
    doc = _with_checks(construct_doc("toykahler"), ["kahler"])
    st = _main(doc)
    st["bigrading"]["1,0"] = [{"e10": "1", "e01": "1"}]
    st["bigrading"]["0,1"] = [{"e10": "1", "e01": "-1"}]
    st["name"] = "toy cell with a leaking bigrading"
    return doc


def nonclosed_form() -> dict:
    """Kodaira-Thurston type fixture: hermitian, dσ ≠ 0."""
    return _with_checks(construct_doc("kodaira-thurston"), ["kahler"])


GOOD = {
    "pair3.spec": lambda: _with_checks(construct_doc("pair:3"), ["hopf", "star"]),
    "pair2-uniqueness.spec": lambda: _with_checks(construct_doc("pair:2"), ["hopf", "star", "uniqueness"]),
    "cm-z2-c2.spec": lambda: construct_doc("cm:Z2:C2"),
    "swap2-calculus.spec": lambda: construct_doc("calculus:action:Z2:swap2"),
    "finite1forms2.spec": lambda: construct_doc("finite1forms:2"),
    "toykahler.spec": lambda: construct_doc("toykahler"),
    "laplacian.spec": lambda: construct_doc("laplacian"),
    "presets.spec": lambda: {
        "format": "halg-spec", "version": 1, "scalars": "gaussian-rational",
        "structures": {"unit3": {"kind": "preset", "preset": "unit:3"},
                       "s3": {"kind": "preset", "preset": "point:S3"},
                       "fs3": {"kind": "preset", "preset": "finite1forms:3"}},
        "checks": [{"suite": "hopf", "target": "unit3"}, {"suite": "star", "target": "unit3"},
                   {"suite": "hopf", "target": "s3"}, {"suite": "finite-set", "target": "fs3"}]},
}

# file -> (builder, headline id the corruption exists to trip, every failing id in report order)
CORRUPT = {
    "broken-antipode.spec": (broken_antipode, "antipode-axiom-left", [
        "antipode-axiom-left", "antipode-axiom-right", "er-sl-el=er-S", "el-sr-er=el-S", "er-tl-el=er-Sinv",
        "el-tr-er=el-Sinv", "muop(id,Sinv)Dl=trer", "muop(Sinv,id)Dr=tlel", "flip-antipode-left",
        "flip-antipode-right"]),
    "swapped-counits.spec": (swapped_counits, "counit-left", [
        *["counit-bimodule", "counit-left", "counit-right", "counit-character-source",
          "counit-character-target"] * 2,
        *[f"{side}/{x}" for side in ("left", "right") for x in (
            "counit-bimodule", "counit-left", "counit-right", "counit-character-source", "counit-character-target")],
        "mu(S,slel)Dl=S", "mu(srer,S)Dr=S", "muop(id,Sinv)Dl=trer", "muop(Sinv,id)Dr=tlel",
        "muop(tlel,Sinv)Dl=Sinv", "muop(Sinv,trer)Dr=Sinv"]),
    "linear-star.spec": (linear_star, "star-H/antilinearity", [
        "star-H/antilinearity", "source-left-star", "source-right-star", "counit-right-star", "counit-left-star"]),
    "degree-shifting-action.spec": (degree_shifting_action, "grading-preserved", ["grading-preserved", "generation"]),
    "leaking-bigrading.spec": (leaking_bigrading, "hermitian/complex/bigrading-star", [
        "hermitian/complex/bigrading-star", "hermitian/hodge/hodge-star-preserving"]),
    "nonclosed-kahler-form.spec": (nonclosed_form, "kahler/kahler-form-closed", [
        "kahler/kahler-form-closed", "invariant/kahler/kahler-form-closed"]),
}


def failing_ids(report: dict) -> list[str]:
    return [it["axiom"] for s in report["suites"] for it in s["items"] if not it["passed"]]


def manifest_path(root: Path) -> Path:
    return root / "MANIFEST.json"


def write_corpus(root: str | Path) -> dict:
    """Write every fixture and a manifest of expected exit codes and failing ids."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    manifest = {}
    for name, build in GOOD.items():
        (root / name).write_text(dumps(build()), encoding="utf-8")
        manifest[name] = {"exit": 0, "failing": []}
    for name, (build, headline, expected) in CORRUPT.items():
        (root / name).write_text(dumps(build()), encoding="utf-8")
        manifest[name] = {"exit": 1, "headline": headline, "failing": expected}
    manifest_path(root).write_text(json.dumps(manifest, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    return manifest


def load_manifest(root: str | Path) -> dict:
    return json.loads(manifest_path(Path(root)).read_text(encoding="utf-8"))


if __name__ == "__main__":  # pragma: no cover
    import sys
    out = write_corpus(sys.argv[1] if len(sys.argv) > 1 else "fixtures")
    for k, v in out.items():
        print(k, v)
