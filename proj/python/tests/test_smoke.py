import json
import os
import pathlib

import pytest

import krc

CORPUS = pathlib.Path(os.environ.get("KRC_CORPUS", pathlib.Path(__file__).parents[2] / "corpus"))


def z2():
    return krc.Semigroup.generated_by([("t", [2, 1])])


def test_generate_and_multiply():
    S = krc.Semigroup.generated_by([("a", [1, 1]), ("b", [2, 2])])
    assert len(S) == 2
    assert S.generator_names == ["a", "b"]
    a, b = S.generator(0), S.generator(1)
    assert S.mul(a, b) == b
    assert S.is_aperiodic()
    assert krc.Semigroup.from_text(S.to_text()).to_text() == S.to_text()


def test_green_and_classification():
    S = krc.Semigroup.from_file(str(CORPUS / "brandt_b2_z2_monoid.sgp"))
    assert len(S) == 10
    g = krc.green(S)
    assert sum(len(c) for c in g["j_classes"]) == 10
    c = krc.classify(S)
    assert c["group_mapping"]
    rlm, phi = krc.rlm(S)
    assert len(phi) == 10 and max(phi) < len(rlm)
    coords = krc.rees(S)
    assert len(coords["group"]) == 2
    assert len(coords["coordinates"]) == 8


def test_spc_lattice():
    spcs = krc.enumerate_spc(2, "Z2")
    assert len(spcs) == 6
    assert krc.spc_join("W={1,2}; blocks=[{1,2}:0,1]", "W={1,2}; blocks=[{1,2}:0,0]", 2, "Z2") is None
    assert krc.spc_meet("W={1,2}; blocks=[{1,2}:0,1]", "W={1}; blocks=[{1}:0]", 2, "Z2") == "W={1}; blocks=[{1}:0]"


def test_flows():
    S = krc.small_monoid(2, "Z2")
    assert len(S) == 17
    flow = krc.trivial_flow(S)
    assert krc.verify_flow(S, flow)["ok"]
    assert krc.flow_search(S, 1) is not None


def test_division():
    assert krc.divides(z2(), krc.Semigroup.from_file(str(CORPUS / "sym3.sgp"))) is not None
    assert krc.divides(krc.Semigroup.generated_by([("c", [2, 3, 1])]), z2()) is None


def test_estimate_and_replay():
    lower, upper, cert = krc.estimate(krc.small_monoid(2, "Z2"))
    assert (lower, upper) == (1, 1)
    ok, _ = krc.replay(cert)
    assert ok
    tampered = json.loads(cert)
    tampered["upper"] = 0
    assert not krc.replay(json.dumps(tampered))[0]
    assert krc.estimate(krc.small_monoid(2, "Z2"), states=0)[1] == 2


def test_lift_census():
    c = krc.lift_census(2, "Z2")
    assert c["order"] == 32 and c["num_jclasses"] == 3 and c["h_order"] == 4


def test_corpus_is_deterministic():
    a = krc.run_corpus(str(CORPUS))
    assert a == krc.run_corpus(str(CORPUS))
    assert a[1] == 0


def test_errors():
    with pytest.raises(krc.InputError):
        krc.Semigroup.from_text("points: 2\n")
    with pytest.raises(krc.ResourceError):
        krc.Semigroup.from_file(str(CORPUS / "sym3.sgp"), budget=3)
    with pytest.raises(ValueError):
        krc.small_monoid(2, "Z2", rank=2)
