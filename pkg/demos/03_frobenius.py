"""
Frobenius systems along the factorization
=========================================

A in C is Frobenius, C in C * G(x) is Frobenius, and the two compose to a
system for A in A * G.  Each system is checked on full bases.
"""

from skewgroupoid import find_group_type, load_fixture, theorem44_iso
from skewgroupoid.extension import (
    coarse_casimir,
    frobenius_coarse,
    frobenius_composite,
    frobenius_group_part,
)

pa = load_fixture("e57").build()
cert = find_group_type(pa, "x")
w = theorem44_iso(pa, cert)

coarse = frobenius_coarse(w.C)
group = frobenius_group_part(w.target, w.gamma)
composite = frobenius_composite(pa, cert, witness=w, coarse=coarse, group=group)

for system in (coarse, group, composite):
    print(system.report.subject, system.report.facts)
    for check in system.report.checks:
        print(f"  {'ok ' if check.passed else 'BAD'} {check.name}")

# keeping only the diagonal terms sum_z 1_z d_(z,z) (x) 1_z d_(z,z) is not enough:
# with two objects it fails to commute with the arrow elements of C
print("diagonal candidate has", len(coarse_casimir(w.C, "diagonal")), "terms")
diag = frobenius_coarse(w.C, candidate="diagonal", strict=False)
bad = diag.report.first_failure
print(f"diagonal candidate fails '{bad.name}' at {bad.witness}")
