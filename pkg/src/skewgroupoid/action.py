"""Unital partial actions of finite groupoids on structure-constant algebras."""
from dataclasses import dataclass, field

from .algebra import (
    LinMap,
    _axpy,
    StructAlgebra,
    VerificationReport,
    check_central_idempotent,
    idempotent_ideal,
    same_span,
    subalgebra,
    verify_ring_map,
)
from .errors import (
    NotCentralIdempotent,
    NotConnected,
    PartialActionAxiomViolation,
    UnknownObject,
)
from .groupoid import (
    Groupoid,
    Transversal,
    enumerate_transversals,
    full_subgroupoid,
    isotropy_group,
    make_transversal,
)
from .linalg import Q, identity, is_zero, matvec, solve_linear, to_dense, vadd, vsub


class PartialAction:
    """Data ``(A_g = A 1_g, alpha_g)`` for every morphism ``g``.

    ``idem[g]`` is the coordinate vector of the central idempotent ``1_g``;
    ``maps[g]`` is the full ``dim x dim`` matrix of ``alpha_g``, normalized to
    vanish on ``(1 - 1_{g^-1}) A``.  Objects use ``idem[id_y] = 1_y``.
    Use :func:`validate_partial_action` to obtain checked instances.
    """

    def __init__(self, groupoid: Groupoid, algebra: StructAlgebra, idem: dict, maps: dict):
        self.groupoid = groupoid
        self.algebra = algebra
        self.idem = {g: algebra.element(v) for g, v in idem.items()}
        self.maps = {g: [[Q(x) for x in row] for row in m] for g, m in maps.items()}
        self._ideals = {}
        self._cols = {}

    def one(self, g):
        return self.idem[g]

    def object_unit(self, y):
        return self.idem[self.groupoid.identity[y]]

    def ideal(self, g):
        if g not in self._ideals:
            self._ideals[g] = idempotent_ideal(self.algebra, self.idem[g])
        return self._ideals[g]

    def ideal_basis(self, g):
        return self.ideal(g).basis

    def apply(self, g, a):
        cols = self._cols.get(g)
        if cols is None:
            M = self.maps[g]
            cols = self._cols[g] = [{i: row[j] for i, row in enumerate(M) if row[j]}
                                    for j in range(self.algebra.dim)]
        acc = {}
        for j, x in enumerate(a):
            if x:
                _axpy(acc, x, cols[j])
        return to_dense(acc, self.algebra.dim)

    def mult_matrix(self, e):
        return self.algebra.left_matrix(e)

    def is_global(self):
        """``alpha_g alpha_h == alpha_{gh}`` for all composable pairs."""
        G, A = self.groupoid, self.algebra
        basis = [A.basis_element(i) for i in range(A.dim)]
        return all(self.apply(g, self.apply(h, b)) == self.apply(gh, b)
                   for (g, h), gh in G.comp.items() for b in basis)

    def nonzero_ideals(self, morphisms=None):
        ms = self.groupoid.morphisms if morphisms is None else morphisms
        return [g for g in ms if not is_zero(self.idem[g])]

    def __repr__(self):
        return f"PartialAction({self.groupoid!r}, dim A = {self.algebra.dim})"


def _fail(axiom, msg, witness):
    raise PartialActionAxiomViolation(axiom, msg, witness=witness)


def validate_partial_action(groupoid, algebra, idem, maps, *, infer_identity_maps=True):
    """Check every partial action axiom exhaustively and return the action.

    Identity maps may be omitted; they are taken to be multiplication by the
    object idempotent.  The first violation raises
    :class:`PartialActionAxiomViolation` with the axiom label and a witness.
    Condition (v) is checked; the equivalent order condition is not tested
    separately.
    """
    G, A = groupoid, algebra
    n = A.dim
    idem = dict(idem)
    maps = dict(maps)
    for g in G.morphisms:
        if g not in idem:
            _fail("data", f"no idempotent given for {g!r}", (g,))
        if g not in maps:
            if infer_identity_maps and G.is_identity(g):
                maps[g] = A.left_matrix(A.element(idem[g]))
            else:
                _fail("data", f"no map given for {g!r}", (g,))
        m = maps[g]
        if len(m) != n or any(len(r) != n for r in m):
            _fail("data", f"map of {g!r} is not {n}x{n}", (g,))
    pa = PartialAction(G, A, idem, maps)
    one = pa.idem
    for g in G.morphisms:
        try:
            check_central_idempotent(A, one[g], name=f"1_{g}")
        except NotCentralIdempotent as exc:
            _fail("i", str(exc), (g,))

    # A = (+) A_y
    total = A.zero()
    for y in G.objects:
        total = vadd(total, pa.object_unit(y))
        for z in G.objects:
            if y != z and not is_zero(A.mul(pa.object_unit(y), pa.object_unit(z))):
                _fail("decomposition", f"1_{y} 1_{z} != 0", (y, z))
    if total != A.unit:
        _fail("decomposition", "object idempotents do not sum to 1", tuple(G.objects))

    # (i) A_g ideal of A_{t(g)}
    for g in G.morphisms:
        if A.mul(one[g], pa.object_unit(G.tgt[g])) != one[g]:
            _fail("i", f"A_{g} is not contained in A_{G.tgt[g]}", (g, G.tgt[g]))

    # (ii) alpha_g : A_{g^-1} -> A_g ring isomorphism, normalized
    for g in G.morphisms:
        gi = G.inv(g)
        M = pa.maps[g]
        off = vsub(A.unit, one[gi])
        for i in range(n):
            v = A.mul(off, A.basis_element(i))
            if not is_zero(v) and not is_zero(matvec(M, v)):
                _fail("ii", f"alpha_{g} does not vanish off A_{gi}", (g, A.labels[i]))
        f = LinMap(M, A, A)
        rep = verify_ring_map(f, pa.ideal_basis(gi), check_unit=True, domain_unit=one[gi],
                              target_unit=one[g], target_span=pa.ideal(g), name=f"alpha_{g}")
        if not rep.ok:
            bad = rep.first_failure
            w = bad.witness
            if bad.name == "multiplicative" and w is not None:
                w = (g, _label(A, pa.ideal_basis(gi)[w[0]]), _label(A, pa.ideal_basis(gi)[w[1]]))
            else:
                w = (g,)
            _fail("ii", f"alpha_{g} fails '{bad.name}' ({bad.detail})", w)

    # (iii) alpha_x = id on A_x
    for y in G.objects:
        e = G.identity[y]
        if pa.maps[e] != A.left_matrix(pa.object_unit(y)):
            _fail("iii", f"alpha of identity at {y!r} is not the identity of A_{y}", (e,))

    # (v) alpha_h^-1(A_{g^-1} cap A_h) in A_{(gh)^-1}, alpha_gh = alpha_g alpha_h there
    for (g, h), gh in G.comp.items():
        d = _preimage_idempotent(pa, g, h)
        if A.mul(d, one[G.inv(gh)]) != d:
            _fail("v", f"alpha_{h}^-1(A_{G.inv(g)} cap A_{h}) is not inside A_{G.inv(gh)}", (g, h))
        for i in range(n):
            v = A.mul(d, A.basis_element(i))
            if is_zero(v):
                continue
            if pa.apply(gh, v) != pa.apply(g, pa.apply(h, v)):
                _fail("v", f"alpha_{gh} != alpha_{g} alpha_{h} on the domain of the composite",
                      (g, h, A.labels[i]))
    return pa


def _label(A, v):
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return A.labels[nz[0]]
    return str(tuple(str(x) for x in v))


def _preimage_idempotent(pa, g, h):
    """Central idempotent generating ``alpha_h^-1(A_{g^-1} A_h)``."""
    A, G = pa.algebra, pa.groupoid
    e = A.mul(pa.idem[G.inv(g)], pa.idem[h])
    hi = G.inv(h)
    # solve alpha_h(d) = e with d in A_{h^-1}
    basis = pa.ideal_basis(hi)
    if not basis:
        return A.zero()
    images = [pa.apply(h, b) for b in basis]
    M = [list(r) for r in zip(*images)]
    sol = solve_linear(M, list(e)).particular
    if sol is None:
        _fail("ii", f"alpha_{h} does not reach the idempotent 1_{G.inv(g)} 1_{h}", (g, h))
    d = A.zero()
    for c, b in zip(sol, basis):
        if c:
            d = vadd(d, tuple(c * x for x in b))
    return d


# consequences -------------------------------------------------------------------

def check_lemma31(pa: PartialAction) -> VerificationReport:
    """Inverse maps, the ideal identity for composable pairs, and the
    characterization of global actions."""
    G, A = pa.groupoid, pa.algebra
    rep = VerificationReport("partial action consequences")
    bad = None
    for g in G.morphisms:
        gi = G.inv(g)
        if any(pa.apply(gi, pa.apply(g, b)) != b for b in pa.ideal_basis(gi)) or \
                any(pa.apply(g, pa.apply(gi, b)) != b for b in pa.ideal_basis(g)):
            bad = g
            break
    rep.add("alpha_{g^-1} = alpha_g^-1", bad is None, "checked as alpha_{g^-1} alpha_g = 1 on A_{g^-1}", bad)
    bad = None
    for (g, h), gh in G.comp.items():
        lhs_e = pa.apply(g, A.mul(pa.idem[G.inv(g)], pa.idem[h]))
        rhs_e = A.mul(pa.idem[g], pa.idem[gh])
        if lhs_e != rhs_e:
            bad = (g, h)
            break
        lhs = [pa.apply(g, A.mul(b, pa.idem[h])) for b in pa.ideal_basis(G.inv(g))]
        rhs = [A.mul(b, pa.idem[gh]) for b in pa.ideal_basis(g)]
        if not same_span(lhs, rhs, A.dim):
            bad = (g, h)
            break
    rep.add("alpha_g(A_{g^-1} cap A_h) = A_g cap A_gh", bad is None, witness=bad)
    by_ideals = all(pa.idem[g] == pa.object_unit(G.tgt[g]) for g in G.morphisms)
    rep.add("global iff A_g = A_t(g)", pa.is_global() == by_ideals,
            f"global: {pa.is_global()}, all A_g = A_t(g): {by_ideals}")
    rep.facts["global"] = by_ideals
    return rep


def ideal_identity(pa, g, h):
    """Both sides of the ideal identity for a composable pair, as spans."""
    A, G = pa.algebra, pa.groupoid
    lhs = [pa.apply(g, A.mul(b, pa.idem[h])) for b in pa.ideal_basis(G.inv(g))]
    rhs = [A.mul(b, pa.idem[G.compose(g, h)]) for b in pa.ideal_basis(g)]
    return lhs, rhs


# restrictions --------------------------------------------------------------------

@dataclass
class Restricted:
    """A partial action on a corner ``A e`` plus its inclusion into ``A``."""
    action: PartialAction
    inclusion: list = field(repr=False)
    parent: PartialAction = field(repr=False)

    def lift(self, v):
        n = self.parent.algebra.dim
        acc = [Q(0)] * n
        for c, b in zip(v, self.inclusion):
            if c:
                for k, x in enumerate(b):
                    if x:
                        acc[k] += c * x
        return tuple(acc)


def _restrict(pa: PartialAction, H: Groupoid, e) -> Restricted:
    A = pa.algebra
    space = idempotent_ideal(A, e)
    sub = subalgebra(A, space.basis, e)
    B = sub.algebra
    idem = {g: sub.restrict(pa.idem[g]) for g in H.morphisms}
    maps = {}
    for g in H.morphisms:
        cols = [sub.restrict(pa.apply(g, b)) for b in sub.inclusion]
        maps[g] = [list(r) for r in zip(*cols)] if cols else []
    act = validate_partial_action(H, B, idem, maps)
    return Restricted(act, list(sub.inclusion), pa)


def restrict_to_isotropy(pa: PartialAction, x) -> Restricted:
    """The partial action of ``G(x)`` on the corner ``A_x``."""
    if x not in pa.groupoid.identity:
        raise UnknownObject(f"unknown object {x!r}", witness=(x,))
    H = isotropy_group(pa.groupoid, x)
    return _restrict(pa, H, pa.object_unit(x))


def restrict_to_component(pa: PartialAction, component: Groupoid) -> Restricted:
    """Restriction to a connected component, on ``(+)_{y in X} A_y``."""
    A = pa.algebra
    H = full_subgroupoid(pa.groupoid, component.objects)
    e = A.zero()
    for y in H.objects:
        e = vadd(e, pa.object_unit(y))
    return _restrict(pa, H, e)


# group type ------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupTypeCertificate:
    base: object
    transversal: Transversal
    witnesses: tuple  # (y, tau_y, tau_y^-1) with the checked equalities

    @property
    def tau(self):
        return self.transversal.as_dict()


def certify(pa: PartialAction, tau: Transversal):
    """Certificate for ``tau`` if ``1_{tau_y^-1} = 1_x`` and ``1_{tau_y} = 1_y``
    for every object, else ``None``."""
    G = pa.groupoid
    x = tau.base
    wit = []
    for y, t in tau.tau:
        ti = G.inv(t)
        if pa.idem[ti] != pa.object_unit(x) or pa.idem[t] != pa.object_unit(y):
            return None
        wit.append((y, t, ti))
    return GroupTypeCertificate(x, tau, tuple(wit))


def find_group_type(pa: PartialAction, x=None, *, exhaustive=False):
    """First transversal (lexicographic) for ``x`` satisfying the group-type
    equalities, or ``None``.  With ``exhaustive=True`` returns the list of
    all certificates instead."""
    G = pa.groupoid
    if x is None:
        x = min(G.objects)
    if x not in G.identity:
        raise UnknownObject(f"unknown object {x!r}", witness=(x,))
    if not G.is_connected():
        raise NotConnected("group-type search needs a connected groupoid")
    found = []
    for tau in enumerate_transversals(G, x):
        cert = certify(pa, tau)
        if cert is not None:
            if not exhaustive:
                return cert
            found.append(cert)
    return found if exhaustive else None


def rebase_certificate(pa: PartialAction, cert: GroupTypeCertificate, z):
    """Move a certificate to base object ``z`` via ``tau~_y = tau_y tau_z^-1``."""
    G = pa.groupoid
    tau = cert.tau
    new = {y: G.compose(tau[y], G.inv(tau[z])) for y in G.objects}
    return certify(pa, make_transversal(G, z, new))


# construction helpers ----------------------------------------------------------------

def identity_action(groupoid: Groupoid, algebra: StructAlgebra) -> PartialAction:
    """Trivial global action of a one-object groupoid: every ``alpha_g = id``."""
    if len(groupoid.objects) != 1:
        raise NotConnected("identity_action expects a one-object groupoid")
    n = algebra.dim
    return validate_partial_action(groupoid, algebra, {g: algebra.unit for g in groupoid.morphisms},
                                   {g: identity(n) for g in groupoid.morphisms})
