import random
from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from skewgroupoid.action import find_group_type, restrict_to_component, restrict_to_isotropy, validate_partial_action
from skewgroupoid.algebra import StructAlgebra
from skewgroupoid.errors import FrobeniusVerificationFailure
from skewgroupoid.extension import (
    _solve_over_center,
    artinian_verdict,
    center_of_coarse_skew,
    check_separability_idempotent,
    coarse_casimir,
    corollary56_witness,
    frobenius_coarse,
    frobenius_composite,
    frobenius_group_part,
    group_level_separability,
    lemma52_criterion,
    lemma52_equivalence,
    lemma52_holds,
    semisimple_verdict,
    separable_composite,
    separable_direct,
    trace_maps,
)
from skewgroupoid.generate import GROUPS, global_block_action, random_instance
from skewgroupoid.groupoid import connected_components, discrete_groupoid, validate_groupoid
from skewgroupoid.instance import FIXTURES, load_fixture
from skewgroupoid.linalg import vadd, vscale
from skewgroupoid.skew import build_skew_ring, induced_beta, theorem44_iso

E = ["e1", "ie1", "e2", "ie2", "e3", "ie3", "e4", "ie4"]


def vec(**coords):
    return tuple(Q(coords.get(lab, 0)) for lab in E)


HALF = Q(1, 2)


@pytest.fixture(scope="module")
def e57_cert(e57):
    return find_group_type(e57, "x")


@pytest.fixture(scope="module")
def e57_iso(e57, e57_cert):
    return theorem44_iso(e57, e57_cert)


def test_trace_on_restricted_group_action(e57):
    R = restrict_to_isotropy(e57, "x").action
    t = trace_maps(R)
    a_x = (HALF, 0, 1, 0)  # 1/2 e1 + e2 in the corner basis e1, ie1, e2, ie2
    assert t("x", a_x) == (1, 0, 1, 0)
    # t_x(a) = a 1_x + alpha_g(a e1)
    a = (Q(3), Q(5), Q(-1), Q(2))
    assert t("x", a) == (6, 0, -1, 2)


def test_trace_on_discrete_groupoid_is_projection():
    A = StructAlgebra(["a", "b"], {(0, 0): {0: 1}, (1, 1): {1: 1}}, [1, 1])
    pa = validate_partial_action(discrete_groupoid(["p", "q"]), A, {"id:p": (1, 0), "id:q": (0, 1)}, {})
    t = trace_maps(pa)
    assert t("p", (Q(3), Q(4))) == (3, 0) and t("q", (Q(3), Q(4))) == (0, 4)
    assert separable_direct(pa).witness == (1, 1)


def test_trivial_z2_on_Q_needs_one_half():
    pa, _ = global_block_action(["x"], GROUPS["Z2"], "Q", 1, random.Random(0))
    assert all(m == [[1]] for m in pa.maps.values())
    v = separable_direct(pa)
    assert v.status == "yes" and v.witness == (HALF,)


def test_trivial_instance():
    pa = load_fixture("trivial").build()
    assert separable_direct(pa).witness == (1,)
    assert lemma52_criterion(pa, find_group_type(pa)) == (1,)


def test_lemma52_example(e57, e57_cert):
    a = vscale(HALF, vec(e1=1, e2=1, e3=1, e4=1))
    assert lemma52_holds(e57, e57_cert, a)
    G = e57.groupoid
    total = vadd(e57.apply("id:x", e57.algebra.mul(a, vec(e1=1, e2=1))),
                 e57.apply(G.inv("l"), e57.algebra.mul(a, vec(e3=1, e4=1))))
    assert total == vec(e1=1, e2=1)
    assert lemma52_criterion(e57, e57_cert) == a
    assert corollary56_witness(e57, e57_cert) == a
    assert not lemma52_holds(e57, e57_cert, vec(e1=1))


def test_four_verdicts_on_e57(e57, e57_cert):
    direct = separable_direct(e57)
    assert direct.status == "yes"
    t = trace_maps(e57)
    for z in e57.groupoid.objects:
        assert t(z, direct.witness) == e57.object_unit(z)
    grp = group_level_separability(e57, "x")
    assert grp.status == "yes" and grp.witness == vec(e1=HALF, e2=1)
    assert lemma52_criterion(e57, e57_cert) is not None
    comp = separable_composite(e57, e57_cert, direct=direct)
    assert comp.status == "yes" and comp.report.ok
    assert lemma52_equivalence(e57, e57_cert).ok
    assert semisimple_verdict(direct).facts["semisimple"].startswith("yes")


def test_separability_idempotent_on_e57(e57):
    S = build_skew_ring(e57)
    assert check_separability_idempotent(S, separable_direct(e57).witness).ok


def test_infeasible_system_gives_no_witness(e57):
    # t_z(a) = 1_z together with a = 0 has no solution
    zero = [[Q(0)] * 8 for _ in range(8)]
    ident = [[Q(int(i == j)) for j in range(8)] for i in range(8)]
    assert _solve_over_center(e57, [(zero, vec(e1=1)), (ident, vec())]) is None


def test_center_of_coarse_skew_ring(e57_iso, e57_cert):
    rep = center_of_coarse_skew(e57_iso.C, e57_cert)
    assert rep.ok and rep.facts["dim_center"] == 4 == rep.facts["dim_center_Ax"]


def test_frobenius_systems_on_e57(e57, e57_cert, e57_iso):
    coarse = frobenius_coarse(e57_iso.C)
    group = frobenius_group_part(e57_iso.target, e57_iso.gamma)
    comp = frobenius_composite(e57, e57_cert, witness=e57_iso, coarse=coarse, group=group)
    for system in (coarse, group, comp):
        assert system.report.ok
        assert [c.name for c in system.report.checks][3:6] == [
            "s Delta = Delta s", "sum eps(u_i) v_i = 1", "sum u_i eps(v_i) = 1"]


def test_diagonal_casimir_is_not_central(e57_iso):
    C = e57_iso.C
    assert len(coarse_casimir(C, "diagonal")) == 2
    with pytest.raises(FrobeniusVerificationFailure) as err:
        frobenius_coarse(C, candidate="diagonal")
    assert "s Delta = Delta s" in str(err.value)
    rep = frobenius_coarse(C, candidate="diagonal", strict=False).report
    assert rep.first_failure.name == "s Delta = Delta s"


@pytest.mark.parametrize("name", FIXTURES)
def test_artinian_on_every_fixture(name):
    rep = artinian_verdict(load_fixture(name).build())
    assert rep.ok and rep.facts["artinian"] == "yes"


def test_artinian_count_on_e57(e57):
    assert artinian_verdict(e57).facts["nonzero_isotropy_ideals"] == {"x": 2}


def test_artinian_with_a_vanishing_loop_ideal():
    G = validate_groupoid(["x"], [("g", "x", "x")], [("g", "g", "id:x")])
    A = StructAlgebra(["1"], {(0, 0): {0: 1}}, [1])
    pa = validate_partial_action(G, A, {"id:x": (1,), "g": (0,)}, {"g": [[0]]})
    rep = artinian_verdict(pa)
    assert rep.facts["nonzero_isotropy_ideals"] == {"x": 1} and rep.facts["artinian"] == "yes"


small = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=30, deadline=None)
@given(st.lists(small, min_size=8, max_size=8), st.lists(small, min_size=8, max_size=8), small)
def test_trace_is_linear(e57, a, b, lam):
    t = trace_maps(e57)
    for z in ("x", "y"):
        lhs = t(z, vadd(tuple(a), vscale(lam, tuple(b))))
        assert lhs == vadd(t(z, tuple(a)), vscale(lam, t(z, tuple(b))))


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_direct_and_composite_agree(seed):
    pa = random_instance(random.Random(seed), max_dim=8).action
    for comp in connected_components(pa.groupoid):
        sub = restrict_to_component(pa, comp).action
        direct = separable_direct(sub)
        cert = find_group_type(sub)
        if cert is None:
            continue
        composite = separable_composite(sub, cert, direct=direct)
        assert composite.separable == direct.separable
        assert lemma52_equivalence(sub, cert).ok
        beta = induced_beta(sub, cert)
        assert beta.is_global()
