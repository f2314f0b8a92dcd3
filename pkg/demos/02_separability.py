"""
Is A inside A * G separable?
============================

Three routes: the trace equations t_z(a) = 1_z solved over the center of A,
the same equations for the isotropy group alone, and the coarse criterion
sum_z alpha_{tau_z^-1}(a 1_z) = 1_x.  Every witness is substituted back.
"""

from fractions import Fraction

from skewgroupoid import load_fixture, find_group_type, restrict_to_isotropy, trace_maps
from skewgroupoid.extension import (
    center_of_coarse_skew,
    check_separability_idempotent,
    group_level_separability,
    lemma52_criterion,
    separable_composite,
    separable_direct,
)
from skewgroupoid.skew import build_skew_ring, theorem44_iso

pa = load_fixture("e57").build()
A = pa.algebra
cert = find_group_type(pa, "x")


def show(v, labels=A.labels):
    return {lab: str(c) for lab, c in zip(labels, v) if c}


# the restricted Z2 action on A_x: t_x(1/2 e1 + e2) = 1_x
R = restrict_to_isotropy(pa, "x").action
half = Fraction(1, 2)
print("t_x(1/2 e1 + e2) =", show(trace_maps(R)("x", (half, 0, 1, 0)), R.algebra.labels))

direct = separable_direct(pa)
print("direct:", direct.status, show(direct.witness))

group = group_level_separability(pa, "x")
print("group level:", group.status, show(group.witness))

a = lemma52_criterion(pa, cert)
print("coarse criterion witness:", show(a))

print("composite:", separable_composite(pa, cert, direct=direct).status)

# the separability idempotent built from the direct witness, checked in S (x)_A S
S = build_skew_ring(pa)
print("idempotent verified:", check_separability_idempotent(S, direct.witness).ok)

# the center of the coarse ring is the diagonal copy of C(A_x)
w = theorem44_iso(pa, cert)
rep = center_of_coarse_skew(w.C, cert)
print("center of C: dim", rep.facts["dim_center"], "matches C(A_x):", rep.ok)
