import json
import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewgroupoid.action import (
    certify,
    check_lemma31,
    find_group_type,
    identity_action,
    rebase_certificate,
    restrict_to_component,
    restrict_to_isotropy,
    validate_partial_action,
)
from skewgroupoid.algebra import StructAlgebra, idempotent_ideal_basis
from skewgroupoid.errors import NotConnected, PartialActionAxiomViolation, UnknownObject
from skewgroupoid.generate import GROUPS, direct_sum, global_block_action, random_instance
from skewgroupoid.groupoid import connected_components, discrete_groupoid, isotropy_group, make_transversal
from skewgroupoid.linalg import matvec

from conftest import build_dict


def renamed(data, tag):
    """Copy of an instance dict with every object, morphism and basis label suffixed."""
    text = json.dumps(data)
    names = set(data["groupoid"]["objects"]) | set(data["algebra"]["basis"])
    for m in data["groupoid"]["morphisms"]:
        names |= {m["id"], m.get("inverse", m["id"])}
    names |= {f"id:{o}" for o in data["groupoid"]["objects"]}
    for name in sorted(names, key=len, reverse=True):
        text = text.replace(f'"{name}"', f'"{name}{tag}"')
    return json.loads(text)


def test_e57_validates(e57):
    assert e57.algebra.dim == 8
    assert not e57.is_global()


def test_corrupted_alpha_l_has_witness_pair(e57_data):
    m = e57_data["action"]["maps"]["l"]
    m["e1"], m["ie1"] = m["ie1"], m["e1"]
    with pytest.raises(PartialActionAxiomViolation) as err:
        build_dict(e57_data)
    assert err.value.axiom == "ii"
    g, a, b = err.value.witness
    assert g == "l" and {a, b} <= {"e1", "ie1", "e2", "ie2"}


def test_shrinking_A_m_to_e4_is_rejected(e57_data):
    e57_data["action"]["idempotents"]["m"] = {"e4": "1"}
    with pytest.raises(PartialActionAxiomViolation) as err:
        build_dict(e57_data)
    assert "m" in err.value.witness


def test_lemma31_on_e57(e57):
    rep = check_lemma31(e57)
    assert rep.ok and rep.facts["global"] is False
    A = e57.algebra
    # alpha_l(A_{l^-1} cap A_g) = A_l cap A_m has basis {e3, ie3}
    img = e57.apply("l", A.element([1, 0, 0, 0, 0, 0, 0, 0]))
    assert img == A.element([0, 0, 0, 0, 1, 0, 0, 0])
    assert e57.idem["m"] == A.mul(e57.idem["l"], e57.idem["m"])


def test_inverse_maps(e57):
    A, G = e57.algebra, e57.groupoid
    for g in G.morphisms:
        gi = G.inv(g)
        for i in range(A.dim):
            a = A.mul(A.basis_element(i), e57.idem[g])
            assert e57.apply(g, e57.apply(gi, a)) == a


def test_restrict_to_isotropy(e57):
    R = restrict_to_isotropy(e57, "x").action
    assert R.algebra.labels == ("e1", "ie1", "e2", "ie2")
    # alpha_g is conjugation on Q(i) e1 and zero on e2
    assert matvec(R.maps["g"], (1, 2, 3, 4)) == (1, -2, 0, 0)
    Ry = restrict_to_isotropy(e57, "y").action
    assert set(Ry.groupoid.morphisms) == {"id:y", "h"}
    with pytest.raises(UnknownObject):
        restrict_to_isotropy(e57, "q")


def test_group_type_on_e57(e57):
    cert = find_group_type(e57, "x")
    assert cert.tau == {"x": "id:x", "y": "l"}
    G = e57.groupoid
    assert certify(e57, make_transversal(G, "x", {"x": "id:x", "y": "m"})) is None
    assert len(find_group_type(e57, "x", exhaustive=True)) == 1
    assert rebase_certificate(e57, cert, "y").tau == {"x": "l^-1", "y": "id:y"}


def test_group_type_needs_connected():
    A = StructAlgebra(["a", "b"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1])
    G = discrete_groupoid(["p", "q"])
    pa = validate_partial_action(G, A, {"id:p": (1, 0), "id:q": (0, 1)}, {})
    with pytest.raises(NotConnected):
        find_group_type(pa, "p")
    comps = connected_components(G)
    for c in comps:
        sub = restrict_to_component(pa, c).action
        assert sub.algebra.dim == 1 and find_group_type(sub) is not None


def test_identity_action_is_global():
    A = StructAlgebra(["1"], {(0, 0): {0: 1}}, [1])
    G = isotropy_group(discrete_groupoid(["x"]), "x")
    assert check_lemma31(identity_action(G, A)).facts["global"]


def test_two_copies_of_e57_restrict_back(e57_dict, e57):
    both = direct_sum(build_dict(renamed(e57_dict, "1")), build_dict(renamed(e57_dict, "2")))
    comps = connected_components(both.groupoid)
    assert len(comps) == 2
    for tag, comp in zip("12", comps):
        sub = restrict_to_component(both, comp).action
        assert sub.algebra.labels == tuple(f"{b}{tag}" for b in e57.algebra.labels)
        assert sub.algebra.table == e57.algebra.table
        for g in e57.groupoid.morphisms:
            assert sub.maps[f"{g}{tag}"] == e57.maps[g]
            assert sub.idem[f"{g}{tag}"] == e57.idem[g]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_generated_actions_satisfy_the_identities(seed):
    pa = random_instance(random.Random(seed), max_dim=8).action
    rep = check_lemma31(pa)
    assert rep.ok, rep.first_failure
    G = pa.groupoid
    for comp in connected_components(G):
        sub = restrict_to_component(pa, comp).action
        x = min(comp.objects)
        corner = idempotent_ideal_basis(sub.algebra, sub.object_unit(x))
        assert restrict_to_isotropy(sub, x).action.algebra.dim == len(corner)
        cert = find_group_type(sub, x)
        if cert is not None:
            for z in comp.objects:
                assert rebase_certificate(sub, cert, z) is not None


@settings(max_examples=15, deadline=None)
@given(st.sampled_from(sorted(GROUPS)), st.integers(1, 3), st.integers(0, 1000))
def test_global_actions_certify_every_transversal(name, k, seed):
    objects = [f"o{i}" for i in range(k)]
    pa, _ = global_block_action(objects, GROUPS[name], "Q", 1, random.Random(seed))
    assert check_lemma31(pa).facts["global"]
    certs = find_group_type(pa, "o0", exhaustive=True)
    assert len(certs) == len(GROUPS[name].elements) ** (k - 1)


def test_missing_identity_maps_are_inferred():
    A = StructAlgebra(["1"], {(0, 0): {0: 1}}, [1])
    G = discrete_groupoid(["x"])
    pa = validate_partial_action(G, A, {"id:x": (1,)}, {})
    assert pa.maps["id:x"] == [[Q(1)]]
