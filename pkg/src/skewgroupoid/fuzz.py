"""Seeded random instances checked against the invariant suites."""
import random
import time
import traceback
from dataclasses import dataclass, field
from pathlib import Path

from .action import check_lemma31, find_group_type, rebase_certificate, restrict_to_component
from .extension import lemma52_equivalence, separable_composite, separable_direct
from .generate import random_instance
from .groupoid import StructuralIso, connected_components, enumerate_transversals
from .instance import dumps_instance, instance_from_action, loads_instance, semantically_equal, write_instance
from .skew import check_remark45, theorem44_iso

INVARIANTS = {
    "a": "partial action axioms after generation and round trip",
    "b": "inverse maps and ideal identities for composable pairs",
    "c": "(gh)_x = g_x h_x and the groupoid factorization",
    "d": "factorization isomorphism of skew rings",
    "e": "direct and composite separability agree",
    "f": "global actions give global gamma",
}


@dataclass
class FuzzSummary:
    seed: int
    count: int
    failures: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)
    elapsed_s: float = 0.0

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        """Deterministic for a fixed seed (timing is kept out)."""
        return {"seed": self.seed, "count": self.count, "failures": list(self.failures),
                "stats": dict(sorted(self.stats.items()))}

    def to_text(self):
        lines = [f"fuzz seed={self.seed} count={self.count}: "
                 f"{len(self.failures)} violation(s) in {self.elapsed_s:.1f} s"]
        for k, v in sorted(self.stats.items()):
            lines.append(f"  {k}: {v}")
        for f in self.failures:
            lines.append(f"  FAIL #{f['index']} ({f['invariant']}) {f['detail']}"
                         + (f" -> {f['path']}" if f.get("path") else ""))
        return "\n".join(lines)


def instance_rng(seed, index):
    return random.Random(seed * 1_000_003 + index)


def check_instance(pa, recipe=None):
    """Run the invariant suites on one action; returns (failures, facts)."""
    failures, facts = [], {"group_type": 0, "non_group_type": 0, "components": 0}

    def fail(inv, detail):
        failures.append((inv, detail))

    def guarded(inv, fn):
        try:
            return fn()
        except Exception as exc:  # findings, not crashes
            fail(inv, f"{type(exc).__name__}: {exc}")
            return None

    def round_trip():
        inst = instance_from_action(pa, "fuzz")
        back = loads_instance(dumps_instance(inst))
        back.build()
        if not semantically_equal(inst, back):
            fail("a", "serialization round trip changed the instance")
    guarded("a", round_trip)

    lem = guarded("b", lambda: check_lemma31(pa))
    if lem is not None and not lem.ok:
        fail("b", f"{lem.first_failure.name}: {lem.first_failure.witness}")
    is_global = bool(lem and lem.facts.get("global"))
    facts["global"] = is_global
    if recipe is not None and not recipe.get("restricted") and not is_global:
        fail("f", "unrestricted generated action is not flagged global")

    for comp in connected_components(pa.groupoid):
        facts["components"] += 1
        sub = restrict_to_component(pa, comp).action
        x = min(comp.objects)

        def structural():
            for tau in enumerate_transversals(sub.groupoid, x):
                rep = StructuralIso(sub.groupoid, tau).verify()
                if not rep.ok:
                    fail("c", f"{rep.first_failure.name}: {rep.first_failure.witness}")
                    return
        guarded("c", structural)

        cert = guarded("d", lambda: find_group_type(sub, x))
        if cert is None:
            facts["non_group_type"] += 1
            if is_global:
                fail("f", "global action without a group-type transversal")
            guarded("e", lambda: separable_direct(sub))
            continue
        facts["group_type"] += 1
        for z in comp.objects:
            if guarded("d", lambda: rebase_certificate(sub, cert, z)) is None:
                fail("d", f"group type lost when moving the base to {z}")
        iso = guarded("d", lambda: theorem44_iso(sub, cert, strict=False))
        if iso is not None:
            if not iso.report.ok:
                f = iso.report.first_failure
                fail("d", f"{f.name}: {f.detail} {f.witness}")
            if iso.source.dim != iso.target.dim:
                fail("d", f"dimensions {iso.source.dim} != {iso.target.dim}")

        def separability():
            direct = separable_direct(sub)
            comp_v = separable_composite(sub, cert, direct=direct)
            if comp_v.separable != direct.separable:
                fail("e", f"direct {direct.status} vs composite {comp_v.status}")
            if not comp_v.report.ok:
                fail("e", f"composite report: {comp_v.report.first_failure.name}")
            eq = lemma52_equivalence(sub, cert)
            if not eq.ok:
                fail("e", "coarse criterion disagrees with the trace test on beta")
        guarded("e", separability)

        if is_global and iso is not None:
            rem = guarded("f", lambda: check_remark45(sub, cert, iso.gamma))
            if rem is not None and not (rem.facts["applicable"] and rem.ok):
                fail("f", f"some C_h is proper for a global action: {rem.facts['C_h = C']}")
    return failures, facts


def run_fuzz(seed=0, count=100, max_objects=3, max_dim=12, max_group=4, out_dir=None,
             progress=None) -> FuzzSummary:
    """Generate ``count`` instances from ``seed`` and check every invariant.

    Instances that violate something are written to ``out_dir`` (if given)
    as ordinary instance files.
    """
    summary = FuzzSummary(seed, count)
    stats = {"global": 0, "partial": 0, "group_type_components": 0,
             "non_group_type_components": 0, "disconnected": 0, "max_skew_dim": 0}
    start = time.perf_counter()
    for index in range(count):
        rng = instance_rng(seed, index)
        try:
            gen = random_instance(rng, max_objects=max_objects, max_dim=max_dim, max_group=max_group)
        except Exception as exc:
            summary.failures.append({"index": index, "invariant": "a",
                                     "detail": f"generation failed: {exc}",
                                     "trace": traceback.format_exc(limit=3)})
            continue
        pa = gen.action
        failures, facts = check_instance(pa, gen.recipe)
        stats["global" if facts.get("global") else "partial"] += 1
        stats["group_type_components"] += facts["group_type"]
        stats["non_group_type_components"] += facts["non_group_type"]
        stats["disconnected"] += facts["components"] > 1
        stats["max_skew_dim"] = max(stats["max_skew_dim"],
                                    sum(pa.ideal(g).dim for g in pa.groupoid.morphisms))
        for inv, detail in failures:
            entry = {"index": index, "invariant": inv, "detail": detail}
            if out_dir is not None:
                path = Path(out_dir) / f"fuzz-seed{seed}-{index}.json"
                path.parent.mkdir(parents=True, exist_ok=True)
                meta = {"description": f"invariant ({inv}) {INVARIANTS[inv]}: {detail}"[:500]}
                write_instance(instance_from_action(pa, f"fuzz-seed{seed}-{index}", meta), path)
                entry["path"] = str(path)
            summary.failures.append(entry)
        if progress:
            progress(index, failures)
    summary.stats = stats
    summary.elapsed_s = time.perf_counter() - start
    return summary


def fuzz(seed=0, count=100, max_objects=3, max_dim=12, **kw) -> FuzzSummary:
    """Alias of :func:`run_fuzz` under the interface name."""
    return run_fuzz(seed, count, max_objects, max_dim, **kw)
