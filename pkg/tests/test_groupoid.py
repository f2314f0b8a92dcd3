import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewgroupoid.errors import EmptyObjectSet, GroupoidAxiomViolation, NotConnected, UnknownObject
from skewgroupoid.generate import GROUPS, product_groupoid_named
from skewgroupoid.groupoid import (
    coarse_groupoid,
    connected_components,
    count_transversals,
    discrete_groupoid,
    disjoint_union,
    enumerate_transversals,
    isotropy_group,
    make_transversal,
    structural_iso,
    validate_groupoid,
)
from skewgroupoid.instance import instance_from_dict

from conftest import fixture_dict


def e57_groupoid(data=None):
    return instance_from_dict(data or fixture_dict("e57")).build_groupoid()


def test_trivial_groupoid():
    G = validate_groupoid(["x"], [])
    assert G.morphisms == ("id:x",)
    assert G.comp == {("id:x", "id:x"): "id:x"}


def test_e57_table():
    G = e57_groupoid()
    assert len(G.morphisms) == 8
    assert G.compose("l", "g") == "m" == G.compose("h", "l")
    assert G.compose("g", "g") == "id:x" and G.compose("h", "h") == "id:y"
    assert G.inv("m") == "m^-1"
    # inferred, not declared
    assert G.compose("l^-1", "m") == "g"
    assert G.compose("m^-1", "l") == "g"


def test_e57_with_lg_redefined_is_rejected():
    data = fixture_dict("e57")
    comps = data["groupoid"]["compositions"]
    comps[comps.index(["l", "g", "m"])] = ["l", "g", "l^-1"]
    with pytest.raises(GroupoidAxiomViolation) as err:
        e57_groupoid(data)
    assert err.value.witness == ("l", "g", "l^-1")


def test_underdetermined_and_inconsistent_presentations():
    with pytest.raises(GroupoidAxiomViolation):
        validate_groupoid(["x"], [("a", "x", "x"), ("b", "x", "x")], [("a", "a", "id:x")])
    with pytest.raises(GroupoidAxiomViolation):
        validate_groupoid(["x"], [("a", "x", "x")], [("a", "a", "id:x"), ("a", "a", "a")])
    with pytest.raises(GroupoidAxiomViolation):
        validate_groupoid(["x"], [("a", "x", "q")])
    with pytest.raises(EmptyObjectSet):
        validate_groupoid([], [])


def test_components():
    G = e57_groupoid()
    assert [c.objects for c in connected_components(G)] == [("x", "y")]
    two = disjoint_union(G, discrete_groupoid(["z"]))
    assert len(connected_components(two)) == 2
    assert len(connected_components(discrete_groupoid(["a", "b", "c"]))) == 3


def test_coarse_groupoid():
    assert len(coarse_groupoid(["x"]).morphisms) == 1
    C = coarse_groupoid(["x", "y"])
    assert len(C.morphisms) == 4
    assert C.compose(("y", "x"), ("x", "y")) == ("x", "x")
    C3 = coarse_groupoid(["x", "y", "z"])
    assert len(C3.morphisms) == 9 and C3.compose(("y", "z"), ("x", "y")) == ("x", "z")
    with pytest.raises(EmptyObjectSet):
        coarse_groupoid([])


def test_isotropy_and_transversals():
    G = e57_groupoid()
    assert set(isotropy_group(G, "x").morphisms) == {"id:x", "g"}
    assert set(isotropy_group(G, "y").morphisms) == {"id:y", "h"}
    assert len(isotropy_group(coarse_groupoid(["x", "y"]), ("x")).morphisms) == 1
    with pytest.raises(UnknownObject):
        isotropy_group(G, "q")
    taus = [t.as_dict() for t in enumerate_transversals(G, "x")]
    assert taus == [{"x": "id:x", "y": "l"}, {"x": "id:x", "y": "m"}]
    assert count_transversals(coarse_groupoid(["x", "y"]), "x") == 1
    with pytest.raises(NotConnected):
        list(enumerate_transversals(discrete_groupoid(["a", "b"]), "a"))


def test_structural_iso_on_e57():
    G = e57_groupoid()
    iso, rep = structural_iso(G, "x", make_transversal(G, "x", {"x": "id:x", "y": "l"}))
    assert rep.ok
    assert iso("m") == (("x", "y"), "g")
    assert iso("l") == (("x", "y"), "id:x")
    assert iso("h") == (("y", "y"), "g")
    assert iso.inverse((("x", "y"), "g")) == "m"


@st.composite
def product_groupoids(draw):
    n = draw(st.integers(1, 3))
    objects = [f"o{i}" for i in range(n)]
    H = GROUPS[draw(st.sampled_from(sorted(GROUPS)))]
    names = draw(st.permutations(range(n * n * len(H.elements))))
    slot = {}

    def name_of(y, z, h):
        slot.setdefault((y, z, h), f"m{names[len(slot)]}")
        return slot[(y, z, h)]
    G, _ = product_groupoid_named(objects, H, name_of)
    return G


@settings(max_examples=40, deadline=None)
@given(product_groupoids(), st.data())
def test_groupoid_properties(G, data):
    for (g, h), k in G.comp.items():
        assert G.src[k] == G.src[h] and G.tgt[k] == G.tgt[g]
    x = data.draw(st.sampled_from(G.objects))
    taus = list(enumerate_transversals(G, x))
    expected = 1
    for y in G.objects:
        if y != x:
            expected *= len(G.hom(x, y))
    assert len(taus) == expected
    tau = data.draw(st.sampled_from(taus))
    iso, rep = structural_iso(G, x, tau)
    assert rep.ok, rep.first_failure


@settings(max_examples=40, deadline=None)
@given(product_groupoids(), st.data())
def test_inference_is_sound(G, data):
    """Any table inferred from a subset of the true facts equals the true table."""
    ids = set(G.identity.values())
    morphisms = [(g, G.src[g], G.tgt[g]) for g in G.morphisms if g not in ids]
    facts = [(g, h, k) for (g, h), k in sorted(G.comp.items())]
    keep = data.draw(st.lists(st.booleans(), min_size=len(facts), max_size=len(facts)))
    identities = {o: G.identity[o] for o in G.objects}
    try:
        H = validate_groupoid(G.objects, morphisms, [f for f, k in zip(facts, keep) if k], identities)
    except GroupoidAxiomViolation as exc:
        assert "not determined" in str(exc)
        return
    assert H.comp == G.comp


def test_components_partition_and_union():
    G = disjoint_union(e57_groupoid(), coarse_groupoid(["p", "q"]))
    comps = connected_components(G)
    morph = [m for c in comps for m in c.morphisms]
    assert sorted(map(str, morph)) == sorted(map(str, G.morphisms))
    objs = [o for c in comps for o in c.objects]
    assert len(objs) == len(set(objs)) == len(G.objects)
