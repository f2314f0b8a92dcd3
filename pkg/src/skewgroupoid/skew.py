"""Partial skew groupoid rings and the factorization through G0^2 x G(x)."""
from dataclasses import dataclass, field

from .action import (
    GroupTypeCertificate,
    PartialAction,
    certify,
    validate_partial_action,
)
from .algebra import StructAlgebra, VerificationReport, _axpy, check_central_idempotent
from .errors import (
    CentralityFailure,
    InvalidElement,
    IsoFailure,
    NotCentralIdempotent,
    PartialActionAxiomViolation,
)
from .groupoid import StructuralIso, coarse_groupoid, isotropy_group
from .linalg import Q, inverse, is_zero, matvec, sparse_rank, to_dense, to_sparse, vadd


class SkewRing:
    """``A *_alpha G`` with basis ``b delta_g`` for ``g`` in declaration order
    and ``b`` running over the basis of ``A_g``.

    ``slots[k] = (g, b)``; ``carrier`` is the validated structure-constant
    algebra on those slots.
    """

    def __init__(self, action: PartialAction, *, validate=True):
        self.action = action
        G, A = action.groupoid, action.algebra
        self.groupoid, self.base = G, A
        self.offset, self.slots, self.ideals = {}, [], {}
        for g in G.morphisms:
            sp = action.ideal(g)
            self.ideals[g] = sp
            self.offset[g] = len(self.slots)
            self.slots.extend((g, b) for b in sp.basis)
        self.dim = len(self.slots)
        labels = [f"{_fmt_vec(A, b)}*d[{g}]" for g, b in self.slots]
        if len(set(labels)) != len(labels):
            labels = [f"s{k}:{lab}" for k, lab in enumerate(labels)]
        table = {}
        for i, (g, a) in enumerate(self.slots):
            gi = G.inv(g)
            for j, (h, b) in enumerate(self.slots):
                if G.tgt[h] != G.src[g]:
                    continue
                v = A.mul(a, action.apply(g, A.mul(b, action.idem[gi])))
                if is_zero(v):
                    continue
                table[(i, j)] = self._coords(G.comp[(g, h)], v)
        unit = self.zero()
        for y in G.objects:
            unit = vadd(unit, self.element(G.identity[y], action.object_unit(y)))
        self.carrier = StructAlgebra(labels, table, unit, validate=validate)

    def _coords(self, g, a):
        try:
            c = self.ideals[g].coords(a)
        except ValueError:
            raise InvalidElement(f"element does not lie in A_{g}", witness=(g,)) from None
        return {self.offset[g] + k: x for k, x in enumerate(c) if x}

    def zero(self):
        return (Q(0),) * self.dim

    def element(self, g, a):
        """Coordinates of ``a delta_g`` (``a`` must lie in ``A_g``)."""
        return to_dense(self._coords(g, a), self.dim)

    def component(self, v, g):
        """The coefficient ``a_g`` of ``v = sum a_g delta_g`` as an element of A."""
        A = self.base
        acc = [Q(0)] * A.dim
        off = self.offset[g]
        for k, b in enumerate(self.ideals[g].basis):
            c = v[off + k]
            if c:
                for i, x in enumerate(b):
                    if x:
                        acc[i] += c * x
        return tuple(acc)

    def components(self, v):
        return {g: self.component(v, g) for g in self.groupoid.morphisms
                if any(v[self.offset[g] + k] for k in range(self.ideals[g].dim))}

    def embed(self, a):
        """``a -> sum_y (a 1_y) delta_y``."""
        A, G = self.base, self.groupoid
        out = self.zero()
        for y in G.objects:
            out = vadd(out, self.element(G.identity[y], A.mul(a, self.action.object_unit(y))))
        return out

    def embedded_base_basis(self):
        return [self.embed(self.base.basis_element(i)) for i in range(self.base.dim)]

    def mul(self, u, v):
        return self.carrier.mul(u, v)

    @property
    def unit(self):
        return self.carrier.unit

    def __repr__(self):
        return f"SkewRing(dim={self.dim}, groupoid={self.groupoid!r})"


def _fmt_vec(A, v):
    nz = [(i, x) for i, x in enumerate(v) if x]
    if len(nz) == 1 and nz[0][1] == 1:
        return A.labels[nz[0][0]]
    return "(" + "+".join(f"{x}{A.labels[i]}" for i, x in nz) + ")"


def build_skew_ring(pa: PartialAction, *, validate=True) -> SkewRing:
    """Build ``A *_alpha G``; associativity and the unit are checked on every
    basis triple unless ``validate=False``."""
    return SkewRing(pa, validate=validate)


# the global action beta of G0^2 ------------------------------------------------------

def induced_beta(pa: PartialAction, cert: GroupTypeCertificate) -> PartialAction:
    """``B_(y,z) = A_z`` and ``beta_(y,z) = alpha_{tau_z} alpha_{tau_y^-1}``."""
    G, A = pa.groupoid, pa.algebra
    tau = cert.tau
    X2 = coarse_groupoid(G.objects)
    idem, maps = {}, {}
    n = A.dim
    for u in X2.morphisms:
        y, z = u
        idem[u] = pa.object_unit(z)
        cols = [pa.apply(tau[z], pa.apply(G.inv(tau[y]), A.basis_element(j))) for j in range(n)]
        maps[u] = [list(r) for r in zip(*cols)]
    try:
        beta = validate_partial_action(X2, A, idem, maps)
    except PartialActionAxiomViolation as exc:
        raise IsoFailure(0, f"induced coarse action is invalid: {exc}", exc.witness) from exc
    return beta


# gamma ---------------------------------------------------------------------------------

@dataclass
class GammaAction:
    """The partial action of ``G(x)`` on ``C = A *_beta G0^2``."""
    C: SkewRing
    action: PartialAction            # over the one-object groupoid G(x), on C.carrier
    units: dict = field(repr=False)  # h -> 1'_h in C coordinates
    cert: GroupTypeCertificate = None

    def ideal_dim(self, h):
        return self.action.ideal(h).dim


def build_gamma(pa: PartialAction, cert: GroupTypeCertificate, C: SkewRing) -> GammaAction:
    G, A = pa.groupoid, pa.algebra
    tau = cert.tau
    x = cert.base
    Gx = isotropy_group(G, x)
    units, maps = {}, {}
    for h in Gx.morphisms:
        e = C.zero()
        for z in G.objects:
            e = vadd(e, C.element((z, z), pa.apply(tau[z], pa.idem[h])))
        try:
            check_central_idempotent(C.carrier, e, name=f"1'_{h}")
        except NotCentralIdempotent as exc:
            raise CentralityFailure(str(exc), exc.witness) from exc
        units[h] = e
    for h in Gx.morphisms:
        hi = Gx.inv(h)
        cols = []
        for (u, b) in C.slots:
            t = u[1]
            corner = A.mul(pa.apply(tau[t], pa.idem[hi]), b)
            a = pa.apply(G.inv(tau[t]), corner)
            img = pa.apply(tau[t], pa.apply(h, a))
            cols.append(C.element(u, img))
        maps[h] = [list(r) for r in zip(*cols)] if cols else []
    try:
        action = validate_partial_action(Gx, C.carrier, units, maps)
    except PartialActionAxiomViolation as exc:
        raise IsoFailure(0, f"gamma is not a partial action: {exc}", exc.witness) from exc
    return GammaAction(C, action, units, cert)


def build_iterated_ring(C: SkewRing, gamma: GammaAction, *, validate=True) -> SkewRing:
    return SkewRing(gamma.action, validate=validate)


# the isomorphism -------------------------------------------------------------------------

@dataclass
class IsoWitness:
    source: SkewRing          # A *_alpha G
    C: SkewRing               # A *_beta G0^2
    gamma: GammaAction
    target: SkewRing          # C *_gamma G(x)
    structural: StructuralIso
    forward: list             # matrix target.dim x source.dim
    backward: list            # matrix source.dim x target.dim, from the surjectivity construction
    report: VerificationReport

    def phi(self, v):
        return matvec(self.forward, v)

    def phi_inv(self, w):
        return matvec(self.backward, w)


def theorem44_iso(pa: PartialAction, cert: GroupTypeCertificate, *, validate_rings=True,
                  cross_check_inverse=True, strict=True) -> IsoWitness:
    """Build ``A *_alpha G``, ``C = A *_beta G0^2``, ``gamma`` and
    ``C *_gamma G(x)`` and verify ``a delta_g -> a delta_(s(g),t(g)) delta_{g_x}``
    is a ring isomorphism, step by step.  With ``strict`` a failed step raises
    :class:`IsoFailure`; otherwise it is only recorded in the report."""
    G, A = pa.groupoid, pa.algebra
    if certify(pa, cert.transversal) is None:
        raise IsoFailure(0, "transversal does not satisfy the group-type condition", cert.tau)
    tau = cert.tau
    S = build_skew_ring(pa, validate=validate_rings)
    beta = induced_beta(pa, cert)
    C = build_skew_ring(beta, validate=validate_rings)
    gamma = build_gamma(pa, cert, C)
    T = build_iterated_ring(C, gamma, validate=validate_rings)
    iso = StructuralIso(G, cert.transversal)
    rep = VerificationReport("factorization isomorphism")
    rep.facts.update(dim_source=S.dim, dim_C=C.dim, dim_target=T.dim,
                     transversal={str(k): str(v) for k, v in tau.items()})

    def fail(step, msg, witness=None):
        rep.add(f"step {step}", False, msg, witness)
        if strict:
            raise IsoFailure(step, msg, witness)

    # step 1: each a delta_g lands in C_{g_x} delta_{g_x}
    cols = []
    step1 = True
    for g, b in S.slots:
        (y, z), gx = iso(g)
        lhs_e = pa.apply(tau[z], pa.idem[gx])
        gts = G.compose(g, tau[y])
        if lhs_e != pa.idem[gts] or A.mul(pa.idem[g], pa.idem[gts]) != pa.idem[g]:
            step1 = False
            fail(1, f"alpha_tau(A_{gx}) = A_(g tau) containing A_{g} fails", (g,))
        c = C.element((y, z), b)
        try:
            cols.append(T.element(gx, c))
        except InvalidElement:
            step1 = False
            fail(1, f"image of a slot of {g!r} is not in C_{gx}", (g,))
            cols.append(T.zero())
    if step1:
        rep.add("step 1", True, "phi is well defined (images lie in C_{g_x})")
    forward = [list(r) for r in zip(*cols)] if cols else []

    # step 2: multiplicative on all basis pairs
    bad = None
    sparse_cols = [to_sparse(c) for c in cols]
    for i in range(S.dim):
        for j in range(S.dim):
            lhs = {}
            for k, x in S.carrier.product(i, j).items():
                _axpy(lhs, x, sparse_cols[k])
            if lhs != T.carrier.mul_sparse(sparse_cols[i], sparse_cols[j]):
                bad = (i, j)
                break
        if bad:
            break
    if bad:
        fail(2, "phi(uv) != phi(u) phi(v)", (S.carrier.labels[bad[0]], S.carrier.labels[bad[1]]))
    else:
        rep.add("step 2", True, f"multiplicative on all {S.dim}x{S.dim} basis pairs")
    if matvec(forward, S.unit) == T.unit:
        rep.add("unit", True, "phi(1) = 1")
    else:
        fail(2, "phi does not preserve the unit")

    # step 3: injective (trivial kernel)
    rk = sparse_rank([to_sparse(c) for c in cols])
    if rk == S.dim:
        rep.add("step 3", True, f"kernel is zero (rank {rk})")
    else:
        fail(3, f"phi has a kernel (rank {rk} < {S.dim})")

    # step 4: surjective, with the explicit preimage w = alpha_tau_z(a) delta_{tau_z h tau_y^-1}
    back_cols = []
    for h, c in T.slots:
        w = S.zero()
        for u, a in C.components(c).items():
            y, z = u
            g = iso.inverse(((y, z), h))
            try:
                w = vadd(w, S.element(g, a))
            except InvalidElement:
                fail(4, f"preimage component does not lie in A_{g}", (g, h))
        back_cols.append(w)
    backward = [list(r) for r in zip(*back_cols)] if back_cols else []
    if rk == T.dim == S.dim:
        rep.add("step 4", True, f"rank {rk} = dim of target {T.dim}")
    else:
        fail(4, f"rank {rk} vs target dim {T.dim}")
    ok_left = all(matvec(backward, cols[i]) == S.carrier.basis_element(i) for i in range(S.dim))
    ok_right = all(matvec(forward, back_cols[k]) == T.carrier.basis_element(k) for k in range(T.dim))
    rep.add("inverse", ok_left and ok_right, "constructed preimage map is a two-sided inverse")
    if not (ok_left and ok_right):
        fail(4, "constructed preimage map is not inverse to phi")
    if cross_check_inverse and S.dim == T.dim:
        try:
            minv = inverse(forward)
        except ValueError:
            minv = None
        rep.add("inverse matches matrix inverse", minv == backward)
    return IsoWitness(S, C, gamma, T, iso, forward, backward, rep)


def check_remark45(pa: PartialAction, cert: GroupTypeCertificate = None, gamma: GammaAction = None):
    """For a global action every ``C_h`` equals ``C``; for a partial one the
    check is reported as not applicable."""
    from .action import check_lemma31, find_group_type

    G = pa.groupoid
    rep = VerificationReport("global actions give global gamma")
    is_global = check_lemma31(pa).facts["global"]
    rep.facts["global"] = is_global
    if cert is None:
        cert = find_group_type(pa, min(G.objects))
    if gamma is None:
        C = build_skew_ring(induced_beta(pa, cert))
        gamma = build_gamma(pa, cert, C)
    unit = gamma.C.unit
    full = {str(h): gamma.units[h] == unit for h in gamma.units}
    rep.facts["C_h = C"] = full
    if is_global:
        bad = next((h for h, ok in full.items() if not ok), None)
        rep.add("all 1'_h = 1", bad is None, witness=bad)
        rep.facts["applicable"] = True
    else:
        rep.facts["applicable"] = False
        rep.add("not applicable", True, "action is not global; some C_h may be proper",
                [h for h, ok in full.items() if not ok])
    return rep
