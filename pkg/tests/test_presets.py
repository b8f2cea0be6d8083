import pytest

from halg.calculus import finite_set_bialgebroid, verify_finite_set
from halg.presets import UnknownPreset, build_preset

IDS = ["unit:2", "pair:2", "point:Z3", "point:trivial", "action:Z2:swap2", "action:Z3:1,2,0", "enveloping:k",
       "enveloping:C2", "enveloping:Z2", "cm:Z2:C2", "cm:Z3:C3", "cm:S3:C3", "cm:Z2:k", "calculus:pair:2",
       "calculus:unit:2", "finite1forms:2", "toykahler", "kodaira-thurston", "laplacian"]


@pytest.mark.parametrize("pid", IDS)
def test_presets_build(pid):
    assert build_preset(pid) is not None


@pytest.mark.parametrize("pid", ["", "pair", "pair:x", "cm:Z2", "cm:Z2:Q7", "calculus:tree:1", "finite1forms:1",
                                 "point:A5"])
def test_bad_presets(pid):
    with pytest.raises(UnknownPreset):
        build_preset(pid)


def test_finite_set_two_points():
    _, c, fs = finite_set_bialgebroid(2)
    rep = verify_finite_set(fs)
    assert rep.ok, rep.failed_ids()
    assert (rep.info["dim H0"], rep.info["dim H"]) == (5, 8)
