"""
Factoring a partial skew groupoid ring
======================================

Two objects x, y; loops g at x and h at y of order two; two arrows l, m
from x to y with lg = m = hl.  A is four copies of Q(i), written over Q
with basis e_j, i e_j.
"""

from skewgroupoid import find_group_type, load_fixture, theorem44_iso
from skewgroupoid.groupoid import enumerate_transversals
from skewgroupoid.action import certify

pa = load_fixture("e57").build()
G, A = pa.groupoid, pa.algebra
print("morphisms:", G.morphisms)
print("dim A =", A.dim)

# each A_g is cut out by a central idempotent
for g in G.morphisms:
    print(f"  A_{g}: dim {pa.ideal(g).dim}")

# a transversal picks one arrow x -> y; only {x, l} satisfies the group-type condition
for tau in enumerate_transversals(G, "x"):
    print(tau.as_dict(), "group type" if certify(pa, tau) else "rejected")

cert = find_group_type(pa, "x")

# build A * G, the coarse ring C = A * G0^2, the action gamma of G(x) on C,
# the iterated ring C * G(x), and check phi on every basis pair
w = theorem44_iso(pa, cert)
print("dims:", w.source.dim, w.C.dim, w.target.dim)
for check in w.report.checks:
    print(f"  {'ok ' if check.passed else 'BAD'} {check.name}: {check.detail}")

# the unit of C_g, the ideal of C on which gamma_g is defined
print("1'_g =", {lab: str(c) for lab, c in zip(w.C.carrier.labels, w.gamma.units["g"]) if c})

# e3 d_m goes to e3 d_(x,y) d_g because m = l g
e3 = A.basis_element(A.label_index("e3"))
image = w.phi(w.source.element("m", e3))
print("phi(e3 d_m) =", [w.target.carrier.labels[k] for k, c in enumerate(image) if c])
