"""End-to-end checks on one instance, collected into a versioned report."""
import json
import time
from dataclasses import dataclass, field

from .action import (
    PartialAction,
    check_lemma31,
    find_group_type,
    rebase_certificate,
    restrict_to_component,
)
from .algebra import _jsonable
from .errors import (
    AlgebraAxiomViolation,
    GroupoidAxiomViolation,
    PartialActionAxiomViolation,
    SkewGroupoidError,
)
from .extension import (
    artinian_verdict,
    center_of_coarse_skew,
    check_separability_idempotent,
    frobenius_coarse,
    frobenius_composite,
    frobenius_group_part,
    lemma52_criterion,
    semisimple_verdict,
    separable_composite,
    separable_direct,
)
from .groupoid import StructuralIso, connected_components, enumerate_transversals
from .instance import InstanceFile
from .linalg import format_rational
from .skew import build_skew_ring, check_remark45, theorem44_iso

SCHEMA = "skewgroupoid-report/1"
SECTIONS = ("validate", "components", "factorize", "separable", "frobenius", "artinian")
PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass
class Options:
    sections: tuple = SECTIONS
    base: object = None
    # tensor spaces over A have dim(S)^2 ambient coordinates; beyond this the
    # Frobenius and idempotent checks are reported as skipped
    max_tensor_dim: int = 96


@dataclass
class Report:
    instance: str
    checks: list = field(default_factory=list)
    witnesses: list = field(default_factory=list)
    dims: dict = field(default_factory=dict)
    transversal: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    def add(self, name, status, detail="", component=None, witness=None):
        self.checks.append({"name": name, "status": status, "detail": detail,
                            "component": component})
        if witness is not None:
            self.witnesses.append({"check": name, "component": component,
                                   "value": _jsonable(witness)})
        return status

    def status_of(self, name, component=None):
        for c in self.checks:
            if c["name"] == name and (component is None or c["component"] == component):
                return c["status"]
        return None

    @property
    def ok(self):
        return all(c["status"] != FAIL for c in self.checks)

    @property
    def exit_code(self):
        return 0 if self.ok else 1

    def as_dict(self):
        return {"schema": SCHEMA, "instance": self.instance, "checks": list(self.checks),
                "witnesses": list(self.witnesses), "dims": _jsonable(self.dims),
                "transversal": _jsonable(self.transversal),
                "elapsed_ms": round(self.elapsed_ms, 3)}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self):
        return render_text(self.as_dict())


def render_text(d) -> str:
    """Plain-text rendering of a report dictionary."""
    lines = [f"instance: {d['instance']}  ({d['schema']})"]
    for c in d["checks"]:
        where = f" [{c['component']}]" if c["component"] else ""
        tag = {"pass": "PASS", "fail": "FAIL", "not-applicable": "N/A "}[c["status"]]
        detail = f": {c['detail']}" if c["detail"] else ""
        lines.append(f"  {tag} {c['name']}{where}{detail}")
    if d["witnesses"]:
        lines.append("witnesses:")
        for w in d["witnesses"]:
            where = f" [{w['component']}]" if w["component"] else ""
            lines.append(f"  {w['check']}{where}: {json.dumps(w['value'], sort_keys=True)}")
    if d["transversal"]:
        lines.append("transversal:")
        for comp, tau in d["transversal"].items():
            lines.append(f"  {comp}: {json.dumps(tau, sort_keys=True)}")
    if d["dims"]:
        lines.append("dims: " + json.dumps(d["dims"], sort_keys=True))
    failed = sum(1 for c in d["checks"] if c["status"] == "fail")
    lines.append(f"result: {'ok' if failed == 0 else f'{failed} check(s) failed'}"
                 f"  elapsed {d['elapsed_ms']:.1f} ms")
    return "\n".join(lines)


def element_dict(A, v):
    """Labelled sparse form of an algebra element, rationals as strings."""
    if v is None:
        return None
    return {A.labels[i]: format_rational(x) for i, x in enumerate(v) if x}


# the pipeline ----------------------------------------------------------------------

def _build(source, report):
    """Parse/validate stages; returns the action or None after recording a failure."""
    if isinstance(source, PartialAction):
        report.add("groupoid axioms", PASS)
        report.add("algebra axioms", PASS)
        report.add("partial action axioms", PASS)
        return source
    inst: InstanceFile = source
    try:
        G = inst.build_groupoid()
    except GroupoidAxiomViolation as exc:
        report.add("groupoid axioms", FAIL, str(exc), witness=exc.witness)
        return None
    report.add("groupoid axioms", PASS, f"{len(G.objects)} objects, {len(G.morphisms)} morphisms")
    try:
        A = inst.build_algebra()
    except AlgebraAxiomViolation as exc:
        report.add("algebra axioms", FAIL, str(exc), witness=exc.witness)
        return None
    report.add("algebra axioms", PASS, f"dim {A.dim}, associative with unit")
    try:
        pa = inst.build()
    except PartialActionAxiomViolation as exc:
        report.add("partial action axioms", FAIL, f"axiom ({exc.axiom}): {exc}",
                   witness={"axiom": exc.axiom, "pair": exc.witness})
        return None
    report.add("partial action axioms", PASS, "(i), (ii), (iii), (v) and A = sum of A_y")
    return pa


def run_pipeline(source, options: Options = None, name=None) -> Report:
    """Validate, split into components, factorize and run the extension checks.

    ``source`` is an :class:`InstanceFile` or an already validated
    :class:`PartialAction`.
    """
    options = options or Options()
    sections = set(options.sections)
    if isinstance(source, InstanceFile):
        name = name or source.name
        hint = options.base if options.base is not None else source.meta.get("base_object")
    else:
        hint = options.base
    report = Report(name or "instance")
    start = time.perf_counter()
    try:
        pa = _build(source, report)
        if pa is not None:
            _run(pa, report, sections, hint, options)
    finally:
        report.elapsed_ms = (time.perf_counter() - start) * 1000
    return report


def _run(pa, report, sections, hint, options):
    G, A = pa.groupoid, pa.algebra
    lem = check_lemma31(pa)
    report.add("partial action consequences", PASS if lem.ok else FAIL,
               "inverse maps, ideal identity, globality criterion",
               witness=None if lem.ok else lem.first_failure.witness)
    is_global = lem.facts["global"]
    report.dims.update(objects=len(G.objects), morphisms=len(G.morphisms), dim_A=A.dim,
                       global_action=is_global)
    if sections <= {"validate"}:
        return
    comps = connected_components(G)
    report.add("components", PASS, f"{len(comps)} connected component(s)",
               witness=[[str(o) for o in c.objects] for c in comps])

    pieces = []
    for comp in comps:
        label = ",".join(str(o) for o in comp.objects)
        sub = pa if len(comps) == 1 else restrict_to_component(pa, comp).action
        base = hint if hint in comp.objects else min(comp.objects)
        pieces.append((label, sub, base))

    factor = {}
    want_factor = sections & {"factorize", "separable", "frobenius"}
    if want_factor:
        for label, sub, base in pieces:
            factor[label] = _factorize(sub, base, label, report, "factorize" in sections)

    if "separable" in sections:
        _separability(pa, pieces, factor, report, options)
    if "frobenius" in sections:
        for label, sub, base in pieces:
            _frobenius(sub, factor[label], label, report, options)
    if "artinian" in sections:
        art = artinian_verdict(pa, hint)
        counts = art.facts["nonzero_isotropy_ideals"]
        report.add("artinian", PASS, "yes; A is finite-dimensional and each G(x) is finite, so "
                   "only finitely many A_h are nonzero", witness={"nonzero A_h over G(x)": counts})


def _factorize(sub, base, label, report, verbose):
    """Group-type search and the factorization isomorphism for one component."""
    out = {"cert": None, "iso": None, "certs": []}
    G = sub.groupoid
    first = next(enumerate_transversals(G, base))
    struct = StructuralIso(G, first).verify()
    if verbose:
        report.add("groupoid factorization", PASS if struct.ok else FAIL,
                   "G is isomorphic to G0^2 x G(x); (gh)_x = g_x h_x", label,
                   None if struct.ok else struct.first_failure.witness)
    certs = find_group_type(sub, base, exhaustive=True)
    out["certs"] = certs
    if not certs:
        report.transversal[label] = None
        if verbose:
            report.add("group type", NA, f"no transversal at {base} satisfies the group-type "
                       "condition", label)
            report.add("factorization isomorphism", NA, "not applicable: action is not of group type",
                       label)
        return out
    cert = certs[0]
    out["cert"] = cert
    report.transversal[label] = {str(k): str(v) for k, v in cert.tau.items()}
    if verbose:
        report.add("group type", PASS, f"tau = {report.transversal[label]}; "
                   f"{len(certs)} group-type transversal(s) at {base}", label)
        bad = [z for z in G.objects if rebase_certificate(sub, cert, z) is None]
        report.add("group type at every base object", PASS if not bad else FAIL, "", label,
                   bad or None)
    try:
        iso = theorem44_iso(sub, cert, strict=False)
    except SkewGroupoidError as exc:
        report.add("factorization isomorphism", FAIL, str(exc), label,
                   getattr(exc, "witness", None))
        return out
    out["iso"] = iso
    dims = {"skew_ring": iso.source.dim, "coarse_skew_ring": iso.C.dim,
            "iterated_ring": iso.target.dim,
            "C_h": {str(h): iso.gamma.ideal_dim(h) for h in iso.gamma.units}}
    report.dims.setdefault("components", {})[label] = dims
    if verbose:
        fail = iso.report.first_failure
        report.add("factorization isomorphism", PASS if iso.report.ok else FAIL,
                   f"phi: {iso.source.dim}-dim skew ring onto {iso.target.dim}-dim iterated ring; "
                   "multiplicative on all basis pairs, bijective, explicit inverse matches",
                   label, None if fail is None else {"step": fail.name, "witness": fail.witness})
        rem = check_remark45(sub, cert, iso.gamma)
        if rem.facts["applicable"]:
            report.add("global action gives global gamma", PASS if rem.ok else FAIL,
                       "every C_h equals C", label)
        else:
            report.add("global action gives global gamma", NA,
                       "action is not global; some C_h are proper ideals", label)
    return out


def _separability(pa, pieces, factor, report, options):
    A = pa.algebra
    direct = separable_direct(pa)
    report.add("separable (trace criterion)", PASS if direct.separable else FAIL,
               "central a with t_z(a) = 1_z for every object" if direct.separable
               else "the trace system has no central solution",
               witness={"a": element_dict(A, direct.witness)} if direct.separable else None)
    if direct.separable:
        S = build_skew_ring(pa)
        if S.dim <= options.max_tensor_dim:
            rep = check_separability_idempotent(S, direct.witness)
            report.add("separability idempotent", PASS if rep.ok else FAIL,
                       "m(e) = 1 and s e = e s in S (x)_A S")
        else:
            report.add("separability idempotent", NA, f"skipped: dim S = {S.dim} exceeds "
                       f"{options.max_tensor_dim}")
    for label, sub, base in pieces:
        f = factor[label]
        cert = f["cert"]
        if cert is None:
            report.add("separable via factorization", NA, "not of group type", label)
            report.add("center of coarse skew ring", NA, "not of group type", label)
            continue
        sub_direct = separable_direct(sub) if len(pieces) > 1 else direct
        comp = separable_composite(sub, cert, direct=sub_direct)
        agree = comp.separable == sub_direct.separable
        B = sub.algebra
        wit = {"a_x": element_dict(B, comp.witnesses.get("a_x")),
               "a": element_dict(B, comp.witnesses.get("a"))}
        if comp.separable:
            status = PASS if agree and comp.report.ok else FAIL
            detail = "group level and coarse criterion both hold"
        else:
            status = FAIL if sub_direct.separable else NA
            detail = f"criterion not met ({comp.status})"
        report.add("separable via factorization", status, detail, label, wit)
        per_tau = {}
        for c in f["certs"]:
            key = ",".join(f"{k}:{v}" for k, v in c.tau.items())
            per_tau[key] = element_dict(B, lemma52_criterion(sub, c))
        report.add("coarse criterion per transversal", PASS if all(v is not None for v in per_tau.values())
                   else FAIL, f"{len(per_tau)} transversal(s) checked", label, per_tau)
        if f["iso"] is not None:
            rep = center_of_coarse_skew(f["iso"].C, cert)
            report.add("center of coarse skew ring", PASS if rep.ok else FAIL,
                       f"dim {rep.facts['dim_center']} = dim C(A_x)", label)
    sem = semisimple_verdict(direct)
    if direct.separable:
        report.add("semisimple extension", PASS, "yes (by separability)")
    else:
        report.add("semisimple extension", NA, sem.facts["semisimple"])


def _frobenius(sub, f, label, report, options):
    if f["cert"] is None or f["iso"] is None:
        for n in ("Frobenius: A in coarse skew ring", "Frobenius: group part", "Frobenius: composite"):
            report.add(n, NA, "not of group type", label)
        return
    iso = f["iso"]
    if max(iso.source.dim, iso.C.dim) > options.max_tensor_dim:
        for n in ("Frobenius: A in coarse skew ring", "Frobenius: group part", "Frobenius: composite"):
            report.add(n, NA, f"skipped: ring dimension exceeds {options.max_tensor_dim}", label)
        return
    coarse = frobenius_coarse(iso.C, strict=False)
    _frob_line(report, "Frobenius: A in coarse skew ring", coarse, label)
    group = frobenius_group_part(iso.target, iso.gamma, strict=False)
    _frob_line(report, "Frobenius: group part", group, label)
    if coarse.report.ok and group.report.ok:
        comp = frobenius_composite(sub, f["cert"], witness=iso, coarse=coarse, group=group,
                                   strict=False)
        _frob_line(report, "Frobenius: composite", comp, label)
    else:
        report.add("Frobenius: composite", FAIL, "a constituent system failed", label)


def _frob_line(report, name, system, label):
    rep = system.report
    fail = rep.first_failure
    report.add(name, PASS if rep.ok else FAIL,
               "bimodule map, central Casimir element, counit sums equal 1" if rep.ok
               else f"{fail.name} fails", label,
               None if fail is None else fail.witness)
