"""The eight acceptance criteria, one test each; every test prints a PASS/FAIL line."""
import json
import time
from fractions import Fraction as Q

import pytest

from skewgroupoid.action import certify, find_group_type, restrict_to_isotropy
from skewgroupoid.cli import main
from skewgroupoid.errors import PartialActionAxiomViolation
from skewgroupoid.extension import (
    artinian_verdict,
    center_of_coarse_skew,
    frobenius_coarse,
    frobenius_composite,
    frobenius_group_part,
    group_level_separability,
    lemma52_criterion,
    lemma52_holds,
    separable_composite,
    separable_direct,
    trace_maps,
)
from skewgroupoid.fuzz import run_fuzz
from skewgroupoid.groupoid import make_transversal
from skewgroupoid.instance import FIXTURES, instance_from_dict, load_fixture
from skewgroupoid.linalg import inverse
from skewgroupoid.skew import theorem44_iso

E = ["e1", "ie1", "e2", "ie2", "e3", "ie3", "e4", "ie4"]
HALF = Q(1, 2)


def vec(**coords):
    return tuple(Q(coords.get(lab, 0)) for lab in E)


@pytest.fixture
def verdict(capsys):
    """Call with (number, ok, detail); prints the line outside capture and asserts."""
    def report(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail
    return report


def test_criterion_1_validation_and_group_type(verdict):
    start = time.perf_counter()
    pa = load_fixture("e57").build()
    cert = find_group_type(pa, "x")
    G = pa.groupoid
    rejected = certify(pa, make_transversal(G, "x", {"x": "id:x", "y": "m"})) is None
    elapsed = time.perf_counter() - start
    ok = cert.tau == {"x": "id:x", "y": "l"} and rejected and elapsed < 1.0
    verdict(1, ok, f"tau = {cert.tau}, {{x, m}} rejected: {rejected}, {elapsed:.3f} s")


def test_criterion_2_factorization_isomorphism(verdict):
    start = time.perf_counter()
    pa = load_fixture("e57").build()
    w = theorem44_iso(pa, find_group_type(pa, "x"))
    elapsed = time.perf_counter() - start
    step2 = next(c for c in w.report.checks if c.name == "step 2")
    ok = (w.source.dim == w.target.dim == 24 and w.report.ok
          and "24x24" in step2.detail and inverse(w.forward) == w.backward and elapsed < 5.0)
    verdict(2, ok, f"dims {w.source.dim} = {w.target.dim}, "
                   f"{len(w.report.checks)} checks ok: {w.report.ok}, {elapsed:.3f} s")


def test_criterion_3_separability_example(verdict):
    pa = load_fixture("e57").build()
    cert = find_group_type(pa, "x")
    R = restrict_to_isotropy(pa, "x").action
    t_x = trace_maps(R)("x", (HALF, 0, 1, 0))
    a = tuple(HALF * x for x in vec(e1=1, e2=1, e3=1, e4=1))
    coarse = lemma52_holds(pa, cert, a)
    direct = separable_direct(pa)
    traces = trace_maps(pa)
    resub = all(traces(z, direct.witness) == pa.object_unit(z) for z in pa.groupoid.objects)
    group = group_level_separability(pa, "x")
    crit = lemma52_criterion(pa, cert)
    composite = separable_composite(pa, cert, direct=direct)
    statuses = [group.status, "yes" if crit is not None else "no", direct.status, composite.status]
    ok = t_x == (1, 0, 1, 0) and coarse and resub and statuses == ["yes"] * 4
    verdict(3, ok, f"t_x(1/2 e1 + e2) = 1_x: {t_x == (1, 0, 1, 0)}, coarse sum = 1_x: {coarse}, "
                   f"group/coarse/direct/composite = {statuses}")


def test_criterion_4_center(verdict):
    pa = load_fixture("e57").build()
    cert = find_group_type(pa, "x")
    w = theorem44_iso(pa, cert)
    rep = center_of_coarse_skew(w.C, cert)
    ok = rep.ok and rep.facts["dim_center"] == 4
    verdict(4, ok, f"center dim {rep.facts['dim_center']}, both containments: {rep.ok}")


def test_criterion_5_frobenius(verdict):
    start = time.perf_counter()
    pa = load_fixture("e57").build()
    cert = find_group_type(pa, "x")
    w = theorem44_iso(pa, cert)
    coarse = frobenius_coarse(w.C)
    group = frobenius_group_part(w.target, w.gamma)
    comp = frobenius_composite(pa, cert, witness=w, coarse=coarse, group=group)
    elapsed = time.perf_counter() - start
    oks = [s.report.ok for s in (coarse, group, comp)]
    verdict(5, all(oks) and elapsed < 10.0, f"coarse/group/composite verified: {oks}, {elapsed:.3f} s")


def test_criterion_6_artinian(verdict):
    results = {}
    for name in FIXTURES:
        rep = artinian_verdict(load_fixture(name).build())
        results[name] = (rep.facts["artinian"], rep.facts["nonzero_isotropy_ideals"])
    ok = all(v[0] == "yes" for v in results.values()) and results["e57"][1] == {"x": 2}
    verdict(6, ok, f"{results}")


def test_criterion_7_fuzz(verdict, tmp_path):
    start = time.perf_counter()
    summary = run_fuzz(seed=0, count=100, max_objects=3, max_dim=12, max_group=4, out_dir=tmp_path)
    elapsed = time.perf_counter() - start
    s = summary.stats
    ok = summary.ok and elapsed < 300 and s["global"] > 0 and s["partial"] > 0
    verdict(7, ok, f"{len(summary.failures)} violations in 100 instances, {s['global']} global, "
                   f"{s['partial']} partial, {elapsed:.1f} s")


def test_criterion_8_negative(verdict, capsys, e57_data):
    m = e57_data["action"]["maps"]["l"]
    m["e1"], m["ie1"] = m["ie1"], m["e1"]
    try:
        instance_from_dict(e57_data).build()
        witness = None
    except PartialActionAxiomViolation as exc:
        witness = exc.witness
    shrunk = load_fixture("e57_shrunk").build()
    none_found = find_group_type(shrunk, "x") is None
    code = main(["factorize", "e57_shrunk", "--format", "json"])
    d = json.loads(capsys.readouterr().out)
    statuses = {c["name"]: c["status"] for c in d["checks"]}
    direct = separable_direct(shrunk)
    ok = (witness is not None and len(witness) == 3 and none_found and code == 0
          and statuses.get("factorization isomorphism") == "not-applicable"
          and direct.separable is not None)
    verdict(8, ok, f"corrupted alpha_l witness {witness}, group type None: {none_found}, "
                   f"factorize: {statuses.get('factorization isomorphism')}, direct: {direct.status}")
