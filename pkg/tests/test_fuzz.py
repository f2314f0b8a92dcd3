import json
import random

from skewgroupoid.fuzz import INVARIANTS, check_instance, fuzz, run_fuzz
from skewgroupoid.generate import random_instance
from skewgroupoid.instance import parse_instance


def test_same_seed_same_summary():
    a = run_fuzz(seed=5, count=6, max_dim=8)
    b = fuzz(seed=5, count=6, max_dim=8)
    assert a.as_dict() == b.as_dict()
    assert a.ok
    assert json.dumps(a.as_dict())  # serializable


def test_different_seeds_differ():
    a = run_fuzz(seed=1, count=6, max_dim=8).as_dict()["stats"]
    b = run_fuzz(seed=2, count=6, max_dim=8).as_dict()["stats"]
    assert a != b


def test_check_instance_reports_facts():
    gen = random_instance(random.Random(11), max_dim=8)
    failures, facts = check_instance(gen.action, gen.recipe)
    assert failures == []
    assert facts["components"] >= 1
    assert facts["group_type"] + facts["non_group_type"] == facts["components"]


def test_violations_are_written_to_disk(tmp_path, monkeypatch):
    import skewgroupoid.fuzz as fz

    def broken(pa, recipe=None):
        return [("e", "planted disagreement")], {"group_type": 0, "non_group_type": 0, "components": 1}
    monkeypatch.setattr(fz, "check_instance", broken)
    summary = fz.run_fuzz(seed=0, count=2, max_dim=6, out_dir=tmp_path)
    assert not summary.ok and len(summary.failures) == 2
    path = summary.failures[0]["path"]
    inst = parse_instance(path)
    assert "planted disagreement" in inst.meta["description"]
    inst.build()
    assert "FAIL #0 (e)" in summary.to_text()


def test_invariant_labels():
    assert sorted(INVARIANTS) == list("abcdef")
