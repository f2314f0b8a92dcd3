import json
import random

import pytest

from skewgroupoid.generate import GROUPS, direct_sum, global_block_action
from skewgroupoid.instance import FIXTURES, instance_from_dict, load_fixture
from skewgroupoid.pipeline import FAIL, NA, PASS, SCHEMA, Options, render_text, run_pipeline


@pytest.fixture(scope="module")
def e57_report():
    return run_pipeline(load_fixture("e57"))


def test_e57_report_passes(e57_report):
    assert e57_report.ok and e57_report.exit_code == 0
    assert e57_report.transversal == {"x,y": {"x": "id:x", "y": "l"}}
    d = e57_report.as_dict()
    assert d["schema"] == SCHEMA
    assert set(d) == {"schema", "instance", "checks", "witnesses", "dims", "transversal", "elapsed_ms"}
    assert d["dims"]["components"]["x,y"]["skew_ring"] == 24
    for name in ("factorization isomorphism", "separable (trace criterion)", "separable via factorization",
                 "center of coarse skew ring", "Frobenius: composite", "artinian"):
        assert e57_report.status_of(name) == PASS, name


def test_json_and_text_agree(e57_report):
    d = json.loads(e57_report.to_json())
    text = render_text(d)
    assert text == e57_report.to_text()
    for c in d["checks"]:
        assert c["name"] in text
    for w in d["witnesses"]:
        assert json.dumps(w["value"], sort_keys=True) in text


@pytest.mark.parametrize("name", FIXTURES)
def test_every_fixture_passes(name):
    rep = run_pipeline(load_fixture(name))
    assert rep.ok, [c for c in rep.checks if c["status"] == FAIL]
    assert rep.status_of("artinian") == PASS


def test_shrunk_instance_is_not_group_type():
    rep = run_pipeline(load_fixture("e57_shrunk"))
    assert rep.status_of("group type") == NA
    assert rep.status_of("factorization isomorphism") == NA
    assert rep.status_of("separable (trace criterion)") == PASS
    assert rep.exit_code == 0


def test_corrupted_instance_fails_at_validation(e57_data):
    m = e57_data["action"]["maps"]["l"]
    m["e1"], m["ie1"] = m["ie1"], m["e1"]
    rep = run_pipeline(instance_from_dict(e57_data))
    assert rep.status_of("partial action axioms") == FAIL
    assert rep.exit_code == 1
    (w,) = rep.witnesses
    assert w["value"]["axiom"] == "ii" and w["value"]["pair"][0] == "l"
    assert rep.status_of("components") is None


def test_discrete_groupoid_factorizes_per_component():
    rng = random.Random(0)
    p, _ = global_block_action(["p"], GROUPS["Z1"], "Qi", 1, rng)
    q, _ = global_block_action(["q"], GROUPS["Z1"], "M2", 1, rng)
    rep = run_pipeline(direct_sum(p, q), name="discrete")
    assert rep.ok
    assert set(rep.transversal) == {"p", "q"}
    assert rep.status_of("factorization isomorphism", "p") == PASS
    assert rep.status_of("factorization isomorphism", "q") == PASS


def test_sections_limit_the_work():
    rep = run_pipeline(load_fixture("e57"), Options(sections=("validate",)))
    assert rep.status_of("components") is None and rep.status_of("artinian") is None
    rep = run_pipeline(load_fixture("e57"), Options(sections=("validate", "components", "artinian")))
    assert rep.status_of("artinian") == PASS and rep.status_of("factorization isomorphism") is None


def test_base_option_moves_the_transversal():
    rep = run_pipeline(load_fixture("e57"), Options(base="y"))
    assert rep.transversal["x,y"] == {"x": "l^-1", "y": "id:y"}
    assert rep.ok
