import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewgroupoid.errors import ParseError
from skewgroupoid.generate import random_instance
from skewgroupoid.instance import (
    FIXTURES,
    dumps_instance,
    instance_from_action,
    instance_from_dict,
    instance_to_dict,
    load_fixture,
    loads_instance,
    parse_instance,
    semantically_equal,
)


def test_e57_shape():
    inst = load_fixture("e57")
    assert inst.objects == ["x", "y"]
    assert len(inst.morphisms) == 6
    assert inst.dim == 8


@pytest.mark.parametrize("name", FIXTURES)
def test_fixtures_round_trip(name):
    inst = load_fixture(name)
    back = loads_instance(dumps_instance(inst))
    assert semantically_equal(inst, back)
    assert dumps_instance(back) == dumps_instance(inst)


def test_zero_denominator(e57_data):
    e57_data["action"]["maps"]["g"]["e1"]["e1"] = "1/0"
    with pytest.raises(ParseError) as err:
        instance_from_dict(e57_data)
    assert "maps.g" in str(err.value)


def test_src_not_an_object(e57_data):
    e57_data["groupoid"]["morphisms"][0]["src"] = "w"
    with pytest.raises(ParseError) as err:
        instance_from_dict(e57_data)
    assert err.value.path == "$.groupoid.morphisms[0].src"


def test_unknown_keys_rejected(e57_data):
    e57_data["algebra"]["dim"] = 8
    with pytest.raises(ParseError):
        instance_from_dict(e57_data)


def test_invalid_json_reports_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n  "groupoid": [1,,2]\n}')
    with pytest.raises(ParseError) as err:
        parse_instance(p)
    assert err.value.line == 2


def test_missing_file(tmp_path):
    with pytest.raises(ParseError):
        parse_instance(tmp_path / "none.json")


def test_rationals_serialize_as_strings():
    d = instance_to_dict(load_fixture("e57"))
    assert d["algebra"]["unit"] == {"e1": "1", "e2": "1", "e3": "1", "e4": "1"}
    text = json.dumps(d)
    assert '": 1' not in text


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_instances_round_trip(seed):
    pa = random_instance(random.Random(seed), max_dim=8).action
    inst = instance_from_action(pa, "gen")
    back = loads_instance(dumps_instance(inst))
    assert semantically_equal(inst, back)
    rebuilt = back.build()
    assert rebuilt.maps == pa.maps and rebuilt.idem == pa.idem
