"""Finite groupoids as validated composition tables."""
import itertools
from dataclasses import dataclass

from .algebra import VerificationReport
from .errors import EmptyObjectSet, GroupoidAxiomViolation, NotConnected, UnknownObject


class Groupoid:
    """A finite groupoid.

    ``comp[(g, h)]`` is the composite ``gh`` ("g after h"), defined exactly
    when ``t(h) == s(g)``.  Morphism ids are arbitrary hashable, orderable
    values (strings for file-backed groupoids, tuples for product groupoids).
    Build instances through :func:`validate_groupoid` or the constructors in
    this module; they are not meant to be mutated afterwards.
    """

    def __init__(self, objects, morphisms, src, tgt, comp, identity, inverse):
        self.objects = tuple(objects)
        self.morphisms = tuple(morphisms)
        self.src = dict(src)
        self.tgt = dict(tgt)
        self.comp = dict(comp)
        self.identity = dict(identity)
        self.inverse = dict(inverse)
        self._hom = {}
        for g in self.morphisms:
            self._hom.setdefault((self.src[g], self.tgt[g]), []).append(g)

    def s(self, g):
        return self.src[g]

    def t(self, g):
        return self.tgt[g]

    def compose(self, g, h):
        try:
            return self.comp[(g, h)]
        except KeyError:
            raise GroupoidAxiomViolation(f"{g!r} and {h!r} are not composable", witness=(g, h)) from None

    def composable(self, g, h):
        return self.tgt[h] == self.src[g]

    def inv(self, g):
        return self.inverse[g]

    def id(self, x):
        if x not in self.identity:
            raise UnknownObject(f"unknown object {x!r}", witness=(x,))
        return self.identity[x]

    def is_identity(self, g):
        return self.identity.get(self.src[g]) == g

    def hom(self, x, y):
        """Morphisms ``x -> y`` in declaration order."""
        return list(self._hom.get((x, y), ()))

    def loops(self, x):
        return self.hom(x, x)

    def composable_pairs(self):
        for g in self.morphisms:
            for h in self.morphisms:
                if self.tgt[h] == self.src[g]:
                    yield g, h

    def is_connected(self):
        return len(connected_components(self)) <= 1

    def __len__(self):
        return len(self.morphisms)

    def __repr__(self):
        return f"Groupoid(objects={list(self.objects)}, morphisms={len(self.morphisms)})"


def _violation(msg, witness):
    return GroupoidAxiomViolation(msg, witness=witness)


def validate_groupoid(objects, morphisms, compositions=(), identities=None, inverses=None):
    """Close and validate a groupoid presentation.

    ``morphisms`` is a sequence of ``(id, src, tgt)`` for the non-identity
    morphisms; ``compositions`` a sequence of ``(g, h, gh)`` facts;
    ``identities`` an optional ``object -> id`` map (default ``"id:<obj>"``);
    ``inverses`` an optional ``g -> g^-1`` map.  Missing composites are
    inferred from identity laws, declared inverses, associativity and the
    fact that composing with a fixed morphism is a bijection of hom-sets.
    Raises :class:`GroupoidAxiomViolation` carrying a witness when the facts
    are inconsistent or do not determine the whole table.
    """
    objects = list(objects)
    if not objects:
        raise EmptyObjectSet("a groupoid needs at least one object")
    if len(set(objects)) != len(objects):
        raise _violation("duplicate object ids", tuple(objects))
    identities = dict(identities or {})
    for o in identities:
        if o not in objects:
            raise _violation(f"identity declared for unknown object {o!r}", (o,))
    ids = {o: identities.get(o, f"id:{o}") for o in objects}
    src, tgt, order = {}, {}, []
    for o in objects:
        src[ids[o]] = tgt[ids[o]] = o
        order.append(ids[o])
    for g, a, b in morphisms:
        if g in src:
            raise _violation(f"duplicate morphism id {g!r}", (g,))
        if g in set(objects):
            raise _violation(f"morphism id {g!r} collides with an object id", (g,))
        for o in (a, b):
            if o not in objects:
                raise _violation(f"morphism {g!r} has unknown endpoint {o!r}", (g, o))
        src[g], tgt[g] = a, b
        order.append(g)

    comp = {}

    def record(g, h, k, why):
        if g not in src or h not in src or k not in src:
            missing = next(m for m in (g, h, k) if m not in src)
            raise _violation(f"unknown morphism {missing!r} in {why}", (g, h, k))
        if tgt[h] != src[g]:
            raise _violation(f"{why}: {g!r} cannot follow {h!r} (t({h})={tgt[h]!r}, s({g})={src[g]!r})",
                             (g, h, k))
        if src[k] != src[h] or tgt[k] != tgt[g]:
            raise _violation(
                f"{why}: {g}{h} = {k} has wrong endpoints "
                f"(expected {src[h]!r} -> {tgt[g]!r}, got {src[k]!r} -> {tgt[k]!r})", (g, h, k))
        old = comp.get((g, h))
        if old is None:
            comp[(g, h)] = k
            return True
        if old != k:
            raise _violation(f"{why}: {g}{h} is both {old!r} and {k!r}", (g, h, k))
        return False

    for g in order:
        record(ids[tgt[g]], g, g, "identity law")
        record(g, ids[src[g]], g, "identity law")
    for g, h, k in compositions:
        record(g, h, k, "declared composition")
    for g, gi in (inverses or {}).items():
        if gi not in src:
            raise _violation(f"declared inverse {gi!r} of {g!r} is unknown", (g, gi))
        record(g, gi, ids[tgt[g]], "declared inverse")
        record(gi, g, ids[src[g]], "declared inverse")

    hom = {}
    for g in order:
        hom.setdefault((src[g], tgt[g]), []).append(g)

    changed = True
    while changed:
        changed = False
        # associativity propagation
        for (a, b), ab in list(comp.items()):
            for c in hom_into(hom, objects, src[b]):
                bc = comp.get((b, c))
                if bc is None:
                    continue
                lhs = comp.get((ab, c))
                rhs = comp.get((a, bc))
                if lhs is not None and rhs is not None and lhs != rhs:
                    raise _violation(f"non-associative: ({a}{b}){c} = {lhs} but {a}({b}{c}) = {rhs}",
                                     (a, b, c))
                if lhs is not None and rhs is None:
                    changed |= record(a, bc, lhs, "associativity")
                elif rhs is not None and lhs is None:
                    changed |= record(ab, c, rhs, "associativity")
        # composing with a fixed morphism permutes hom-sets
        for g in order:
            for w in objects:
                changed |= _complete_row(comp, record, g, hom.get((w, src[g]), []),
                                         hom.get((w, tgt[g]), []), left=True)
                changed |= _complete_row(comp, record, g, hom.get((tgt[g], w), []),
                                         hom.get((src[g], w), []), left=False)

    for g in order:
        for h in order:
            if tgt[h] == src[g] and (g, h) not in comp:
                raise _violation(f"composite {g}{h} is not determined by the presentation", (g, h))

    inverse = {}
    for g in order:
        cands = [h for h in hom.get((tgt[g], src[g]), [])
                 if comp[(g, h)] == ids[tgt[g]] and comp[(h, g)] == ids[src[g]]]
        if not cands:
            raise _violation(f"morphism {g!r} has no inverse", (g,))
        inverse[g] = cands[0]
    G = Groupoid(objects, order, src, tgt, comp, ids, inverse)
    check_groupoid_axioms(G)
    return G


def hom_into(hom, objects, y):
    for w in objects:
        yield from hom.get((w, y), [])


def _complete_row(comp, record, g, domain, codomain, left):
    """Latin-square step: ``h -> gh`` (or ``h -> hg``) is a bijection
    ``domain -> codomain``; fill the single missing entry or flag a clash."""
    if len(domain) != len(codomain):
        raise _violation(f"composition with {g!r} cannot be bijective "
                         f"(hom-sets of sizes {len(domain)} and {len(codomain)})", (g,))
    known, unknown = {}, []
    for h in domain:
        key = (g, h) if left else (h, g)
        k = comp.get(key)
        if k is None:
            unknown.append(h)
        elif k in known:
            other = known[k]
            pair = (g, h, other) if left else (h, other, g)
            raise _violation(f"composition with {g!r} is not injective ({k!r} hit twice)", pair)
        else:
            known[k] = h
    if len(unknown) == 1:
        rest = [k for k in codomain if k not in known]
        h = unknown[0]
        return record(g, h, rest[0], "cancellation") if left else record(h, g, rest[0], "cancellation")
    return False


def check_groupoid_axioms(G: Groupoid):
    """Exhaustive check of the groupoid axioms on a complete table."""
    for (g, h), k in G.comp.items():
        if G.tgt[h] != G.src[g]:
            raise _violation(f"{g}{h} defined although not composable", (g, h))
        if G.src[k] != G.src[h] or G.tgt[k] != G.tgt[g]:
            raise _violation(f"s/t mismatch for {g}{h} = {k}", (g, h, k))
    for g in G.morphisms:
        for h in G.morphisms:
            composable = G.tgt[h] == G.src[g]
            if composable != ((g, h) in G.comp):
                raise _violation(f"composite {g}{h} missing or spurious", (g, h))
    into = {y: _into(G, y) for y in G.objects}
    for g, h in G.comp:
        gh = G.comp[(g, h)]
        for k in into[G.src[h]]:
            if G.comp[(gh, k)] != G.comp[(g, G.comp[(h, k)])]:
                raise _violation("non-associative triple", (g, h, k))
    for x in G.objects:
        e = G.identity[x]
        for g in G.morphisms:
            if G.src[g] == x and G.comp[(g, e)] != g:
                raise _violation(f"{e} is not a right identity for {g}", (g, e))
            if G.tgt[g] == x and G.comp[(e, g)] != g:
                raise _violation(f"{e} is not a left identity for {g}", (e, g))
    for g in G.morphisms:
        gi = G.inverse[g]
        if G.comp[(gi, g)] != G.identity[G.src[g]] or G.comp[(g, gi)] != G.identity[G.tgt[g]]:
            raise _violation(f"{gi} is not an inverse of {g}", (g, gi))
    return G


def _into(G, y):
    return [k for k in G.morphisms if G.tgt[k] == y]


def from_table(objects, morphisms, comp, identity):
    """Build and check a groupoid from a complete table (no inference)."""
    src = {g: a for g, a, b in morphisms}
    tgt = {g: b for g, a, b in morphisms}
    order = [g for g, _, _ in morphisms]
    inverse = {}
    for g in order:
        inverse[g] = next(h for h in order if src[h] == tgt[g] and tgt[h] == src[g]
                          and comp[(g, h)] == identity[tgt[g]])
    G = Groupoid(objects, order, src, tgt, comp, identity, inverse)
    return check_groupoid_axioms(G)


# structure ---------------------------------------------------------------------

def full_subgroupoid(G: Groupoid, objs) -> Groupoid:
    objs = [o for o in G.objects if o in set(objs)]
    keep = [g for g in G.morphisms if G.src[g] in objs and G.tgt[g] in objs]
    kept = set(keep)
    comp = {(g, h): k for (g, h), k in G.comp.items() if g in kept and h in kept}
    return Groupoid(objs, keep, {g: G.src[g] for g in keep}, {g: G.tgt[g] for g in keep},
                    comp, {o: G.identity[o] for o in objs}, {g: G.inverse[g] for g in keep})


def connected_components(G: Groupoid) -> list:
    """Full connected subgroupoids, ordered by their first object."""
    parent = {o: o for o in G.objects}

    def find(o):
        while parent[o] != o:
            parent[o] = parent[parent[o]]
            o = parent[o]
        return o

    for g in G.morphisms:
        a, b = find(G.src[g]), find(G.tgt[g])
        if a != b:
            parent[b] = a
    classes = {}
    for o in G.objects:
        classes.setdefault(find(o), []).append(o)
    return [full_subgroupoid(G, objs) for objs in classes.values()]


def coarse_groupoid(objects) -> Groupoid:
    """The pair groupoid ``X^2`` with morphisms ``(x, y): x -> y``."""
    objects = list(objects)
    if not objects:
        raise EmptyObjectSet("coarse groupoid needs a nonempty object set")
    morph = [(x, y) for x in objects for y in objects]
    src = {u: u[0] for u in morph}
    tgt = {u: u[1] for u in morph}
    comp = {((y, z), (x, y)): (x, z) for x in objects for y in objects for z in objects}
    return Groupoid(objects, morph, src, tgt, comp, {x: (x, x) for x in objects},
                    {(x, y): (y, x) for (x, y) in morph})


def isotropy_group(G: Groupoid, x) -> Groupoid:
    if x not in G.identity:
        raise UnknownObject(f"unknown object {x!r}", witness=(x,))
    return full_subgroupoid(G, [x])


def discrete_groupoid(objects) -> Groupoid:
    objects = list(objects)
    ids = {o: f"id:{o}" for o in objects}
    return Groupoid(objects, [ids[o] for o in objects], {ids[o]: o for o in objects},
                    {ids[o]: o for o in objects}, {(ids[o], ids[o]): ids[o] for o in objects},
                    ids, {ids[o]: ids[o] for o in objects})


def disjoint_union(G: Groupoid, H: Groupoid) -> Groupoid:
    if set(G.objects) & set(H.objects) or set(G.morphisms) & set(H.morphisms):
        raise GroupoidAxiomViolation("disjoint union needs disjoint ids")
    return Groupoid(G.objects + H.objects, G.morphisms + H.morphisms, {**G.src, **H.src},
                    {**G.tgt, **H.tgt}, {**G.comp, **H.comp}, {**G.identity, **H.identity},
                    {**G.inverse, **H.inverse})


def product_groupoid(left: Groupoid, right: Groupoid) -> Groupoid:
    """Componentwise product; morphisms are pairs ``(u, h)``."""
    objects = [(a, b) for a in left.objects for b in right.objects]
    morph = [(u, h) for u in left.morphisms for h in right.morphisms]
    src = {(u, h): (left.src[u], right.src[h]) for u, h in morph}
    tgt = {(u, h): (left.tgt[u], right.tgt[h]) for u, h in morph}
    comp = {}
    for (u1, u2), v in left.comp.items():
        for (h1, h2), k in right.comp.items():
            comp[((u1, h1), (u2, h2))] = (v, k)
    identity = {(a, b): (left.identity[a], right.identity[b]) for a, b in objects}
    inverse = {(u, h): (left.inverse[u], right.inverse[h]) for u, h in morph}
    return Groupoid(objects, morph, src, tgt, comp, identity, inverse)


# transversals -------------------------------------------------------------------

@dataclass(frozen=True)
class Transversal:
    base: object
    tau: tuple  # ((object, morphism), ...) in object order

    def __getitem__(self, y):
        return dict(self.tau)[y]

    def as_dict(self):
        return dict(self.tau)


def make_transversal(G: Groupoid, x, tau: dict) -> Transversal:
    if x not in G.identity:
        raise UnknownObject(f"unknown object {x!r}", witness=(x,))
    for y in G.objects:
        g = tau.get(y)
        if g is None or G.src[g] != x or G.tgt[g] != y:
            raise GroupoidAxiomViolation(f"tau_{y} must be a morphism {x} -> {y}", witness=(y, g))
    if tau[x] != G.identity[x]:
        raise GroupoidAxiomViolation("tau at the base object must be its identity", witness=(x, tau[x]))
    return Transversal(x, tuple((y, tau[y]) for y in G.objects))


def enumerate_transversals(G: Groupoid, x):
    """All transversals for ``x``, lexicographic in morphism ids."""
    if x not in G.identity:
        raise UnknownObject(f"unknown object {x!r}", witness=(x,))
    if not G.is_connected():
        raise NotConnected("transversals need a connected groupoid")
    others = [y for y in G.objects if y != x]
    choices = [sorted(G.hom(x, y)) for y in others]
    for pick in itertools.product(*choices):
        tau = dict(zip(others, pick))
        tau[x] = G.identity[x]
        yield Transversal(x, tuple((y, tau[y]) for y in G.objects))


def count_transversals(G: Groupoid, x):
    n = 1
    for y in G.objects:
        if y != x:
            n *= len(G.hom(x, y))
    return n


# Proposition: connected G is isomorphic to G0^2 x G(x) -----------------------------

class StructuralIso:
    """``g -> ((s(g), t(g)), tau_{t(g)}^-1 g tau_{s(g)})`` and its inverse."""

    def __init__(self, G: Groupoid, tau: Transversal):
        if not G.is_connected():
            raise NotConnected("structural isomorphism needs a connected groupoid")
        self.G = G
        self.tau = tau
        self.x = tau.base
        self.coarse = coarse_groupoid(G.objects)
        self.isotropy = isotropy_group(G, self.x)
        self.target = product_groupoid(self.coarse, self.isotropy)
        self._tau = tau.as_dict()

    def loop_part(self, g):
        G, t = self.G, self._tau
        return G.compose(G.compose(G.inv(t[G.tgt[g]]), g), t[G.src[g]])

    def __call__(self, g):
        G = self.G
        return ((G.src[g], G.tgt[g]), self.loop_part(g))

    def inverse(self, pair):
        (y, z), h = pair
        G, t = self.G, self._tau
        return G.compose(G.compose(t[z], h), G.inv(t[y]))

    def verify(self) -> VerificationReport:
        G, P = self.G, self.target
        rep = VerificationReport(f"structural isomorphism at {self.x!r}")
        images = {g: self(g) for g in G.morphisms}
        bad = next((g for g, (_, h) in images.items()
                    if G.src[h] != self.x or G.tgt[h] != self.x), None)
        rep.add("loop part lies in G(x)", bad is None, witness=bad)
        rep.add("bijective", len(set(images.values())) == len(G.morphisms) == len(P.morphisms),
                f"{len(set(images.values()))} distinct images, |G0^2 x G(x)| = {len(P.morphisms)}")
        bad = None
        for (g, h), gh in G.comp.items():
            if images[gh] != P.comp[(images[g], images[h])]:
                bad = (g, h)
                break
        rep.add("functor", bad is None, "phi(gh) = phi(g) phi(h) on all composable pairs", bad)
        bad = next((g for g in G.morphisms if self.inverse(images[g]) != g), None)
        rep.add("inverse after phi is identity", bad is None, witness=bad)
        bad = next((p for p in P.morphisms if self(self.inverse(p)) != p), None)
        rep.add("phi after inverse is identity", bad is None, witness=bad)
        bad = None
        for (g, h) in G.comp:
            if self.loop_part(G.comp[(g, h)]) != G.compose(self.loop_part(g), self.loop_part(h)):
                bad = (g, h)
                break
        rep.add("(gh)_x = g_x h_x", bad is None, witness=bad)
        return rep


def structural_iso(G: Groupoid, x, tau: Transversal):
    if tau.base != x:
        raise GroupoidAxiomViolation("transversal is based at a different object", witness=(x, tau.base))
    iso = StructuralIso(G, tau)
    return iso, iso.verify()
