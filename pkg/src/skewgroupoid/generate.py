"""Random and hand-built partial actions.

A global action of ``X^2 x H`` is built on ``A = (+)_y K^m`` by permuting the
``m`` identical blocks along ``H``, twisting each block by a character of
``H``, and conjugating with a random identification ``K^m -> A_y`` at every
object.  Restricting to an ideal ``A e`` then gives a genuinely partial action.
"""
import random
from dataclasses import dataclass

from .action import PartialAction, validate_partial_action
from .algebra import StructAlgebra, subalgebra, idempotent_ideal
from .groupoid import Groupoid, disjoint_union
from .linalg import Q, identity, inverse, matmul, zero_matrix

# local blocks ---------------------------------------------------------------------

BLOCK_KINDS = ("Q", "Qi", "M2")


def _block(kind):
    """(labels, table, unit) of the block algebra."""
    if kind == "Q":
        return ["1"], {(0, 0): {0: Q(1)}}, (Q(1),)
    if kind == "Qi":
        return ["1", "i"], {(0, 0): {0: Q(1)}, (0, 1): {1: Q(1)}, (1, 0): {1: Q(1)},
                            (1, 1): {0: Q(-1)}}, (Q(1), Q(0))
    if kind == "M2":
        labels = ["E11", "E12", "E21", "E22"]
        table = {}
        for a in range(2):
            for b in range(2):
                for c in range(2):
                    table[(2 * a + b, 2 * b + c)] = {2 * a + c: Q(1)}
        return labels, table, (Q(1), Q(0), Q(0), Q(1))
    raise ValueError(f"unknown block kind {kind!r}")


def block_dim(kind):
    return len(_block(kind)[0])


def _m2_conjugation(P):
    """Matrix of ``X -> P X P^-1`` on the basis E11, E12, E21, E22."""
    Pi = inverse(P)
    cols = []
    for a in range(2):
        for b in range(2):
            X = [[Q(int(i == a and j == b)) for j in range(2)] for i in range(2)]
            Y = matmul(matmul(P, X), Pi)
            cols.append([Y[0][0], Y[0][1], Y[1][0], Y[1][1]])
    return [list(r) for r in zip(*cols)]


SWAP = [[Q(0), Q(1)], [Q(1), Q(0)]]


def block_twist(kind):
    """An order-two automorphism of the block (identity for Q)."""
    if kind == "Q":
        return identity(1)
    if kind == "Qi":
        return [[Q(1), Q(0)], [Q(0), Q(-1)]]
    return _m2_conjugation(SWAP)


def random_block_automorphism(kind, rng):
    if kind == "Q":
        return identity(1)
    if kind == "Qi":
        return block_twist(kind) if rng.random() < 0.5 else identity(2)
    while True:
        P = [[Q(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
        if P[0][0] * P[1][1] - P[0][1] * P[1][0] != 0:
            return _m2_conjugation(P)


# small groups ---------------------------------------------------------------------

@dataclass(frozen=True)
class SmallGroup:
    name: str
    elements: tuple
    op: object      # callable (a, b) -> ab
    unit: object

    def inv(self, a):
        return next(b for b in self.elements if self.op(a, b) == self.unit)


def cyclic(n):
    return SmallGroup(f"Z{n}", tuple(range(n)), lambda a, b: (a + b) % n, 0)


def klein():
    els = ((0, 0), (0, 1), (1, 0), (1, 1))
    return SmallGroup("Z2xZ2", els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), (0, 0))


GROUPS = {"Z1": cyclic(1), "Z2": cyclic(2), "Z3": cyclic(3), "Z4": cyclic(4), "Z2xZ2": klein()}


def _perm_power(p, k):
    out = list(range(len(p)))
    for _ in range(k):
        out = [p[i] for i in out]
    return tuple(out)


def _compose_perm(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def random_block_permutations(H: SmallGroup, m, rng):
    """A homomorphism ``H -> S_m`` as a dict of tuples."""
    ident = tuple(range(m))
    if H.name == "Z2xZ2":
        p1 = _random_perm_of_order(2, m, rng)
        p2 = rng.choice([ident, p1])
        return {(a, b): _compose_perm(_perm_power(p1, a), _perm_power(p2, b)) for a, b in H.elements}
    n = len(H.elements)
    p = _random_perm_of_order(n, m, rng)
    return {k: _perm_power(p, k) for k in H.elements}


def _random_perm_of_order(n, m, rng):
    for _ in range(50):
        p = list(range(m))
        rng.shuffle(p)
        p = tuple(p)
        if _perm_power(p, n) == tuple(range(m)):
            return p
    return tuple(range(m))


def random_character(H: SmallGroup, rng):
    """A homomorphism ``H -> Z/2``."""
    if H.name == "Z2xZ2":
        c = rng.choice([(0, 0), (1, 0), (0, 1), (1, 1)])
        return {e: (c[0] * e[0] + c[1] * e[1]) % 2 for e in H.elements}
    n = len(H.elements)
    if n % 2 == 0 and rng.random() < 0.5:
        return {k: k % 2 for k in H.elements}
    return {k: 0 for k in H.elements}


# construction ---------------------------------------------------------------------

@dataclass
class BlockLayout:
    """Basis of ``(+)_y K^m``: index ``((oi * m) + j) * d + k``."""
    objects: list
    kind: str
    m: int

    @property
    def d(self):
        return block_dim(self.kind)

    @property
    def dim(self):
        return len(self.objects) * self.m * self.d

    def index(self, oi, j, k):
        return ((oi * self.m) + j) * self.d + k

    def algebra(self, label_fmt="{loc}_{obj}{block}"):
        labels, table, unit = _block(self.kind)
        glabels, gtable, gunit = [], {}, [Q(0)] * self.dim
        for oi, y in enumerate(self.objects):
            for j in range(self.m):
                base = self.index(oi, j, 0)
                for k, lab in enumerate(labels):
                    blk = str(j) if self.m > 1 else ""
                    glabels.append(label_fmt.format(loc=lab, obj=y, block=blk))
                    gunit[base + k] = unit[k]
                for (a, b), v in table.items():
                    gtable[(base + a, base + b)] = {base + c: x for c, x in v.items()}
        return StructAlgebra(glabels, gtable, tuple(gunit))

    def block_unit(self, oi, j):
        _, _, unit = _block(self.kind)
        v = [Q(0)] * self.dim
        base = self.index(oi, j, 0)
        for k, x in enumerate(unit):
            v[base + k] = x
        return tuple(v)

    def object_unit(self, oi):
        v = [Q(0)] * self.dim
        for j in range(self.m):
            for i, x in enumerate(self.block_unit(oi, j)):
                v[i] += x
        return tuple(v)


def _embedding(layout: BlockLayout, oi, perm, autos):
    """Matrix ``K^m -> A`` sending canonical block j to block perm[j] at object oi."""
    d, m = layout.d, layout.m
    M = zero_matrix(layout.dim, m * d)
    for j in range(m):
        a = autos[j]
        for k in range(d):
            for r in range(d):
                if a[r][k]:
                    M[layout.index(oi, perm[j], r)][j * d + k] = a[r][k]
    return M


def _projection(layout: BlockLayout, oi, perm, autos):
    """Left inverse of :func:`_embedding`, vanishing off A_y."""
    d, m = layout.d, layout.m
    M = zero_matrix(m * d, layout.dim)
    for j in range(m):
        a = inverse(autos[j])
        for k in range(d):
            for r in range(d):
                if a[k][r]:
                    M[j * d + k][layout.index(oi, perm[j], r)] = a[k][r]
    return M


def _canonical_action(layout: BlockLayout, rho, chi, h):
    d, m = layout.d, layout.m
    tw = block_twist(layout.kind) if chi[h] else identity(d)
    M = zero_matrix(m * d, m * d)
    for j in range(m):
        jj = rho[h][j]
        for k in range(d):
            for r in range(d):
                if tw[r][k]:
                    M[jj * d + r][j * d + k] = tw[r][k]
    return M


def product_groupoid_named(objects, H: SmallGroup, name_of):
    """``X^2 x H`` with string ids; ``name_of(y, z, h)`` names each morphism."""
    morph, src, tgt, comp, ident, inv = [], {}, {}, {}, {}, {}
    key = {}
    for y in objects:
        for z in objects:
            for h in H.elements:
                g = name_of(y, z, h)
                key[g] = (y, z, h)
                morph.append(g)
                src[g], tgt[g] = y, z
    back = {v: k for k, v in key.items()}
    for g, (y, z, h) in key.items():
        inv[g] = back[(z, y, H.inv(h))]
        if y == z and h == H.unit:
            ident[y] = g
        for w in objects:
            for h2 in H.elements:
                comp[(back[(z, w, h2)], g)] = back[(y, w, H.op(h2, h))]
    G = Groupoid(list(objects), morph, src, tgt, comp, ident, inv)
    return G, key


def global_block_action(objects, H: SmallGroup, kind, m, rng, *, name_of=None,
                        label_fmt="{loc}_{obj}{block}", rho=None, chi=None, identify=True):
    """A global action of ``X^2 x H`` on ``(+)_y K^m``."""
    layout = BlockLayout(list(objects), kind, m)
    A = layout.algebra(label_fmt)
    if name_of is None:
        def name_of(y, z, h):
            return f"id:{y}" if (y == z and h == H.unit) else f"({y},{z};{h})"
    G, key = product_groupoid_named(objects, H, name_of)
    rho = rho or random_block_permutations(H, m, rng)
    chi = chi or random_character(H, rng)
    emb, proj = [], []
    for oi, _ in enumerate(layout.objects):
        if identify:
            perm = list(range(m))
            rng.shuffle(perm)
            autos = [random_block_automorphism(kind, rng) for _ in range(m)]
        else:
            perm, autos = list(range(m)), [identity(layout.d)] * m
        emb.append(_embedding(layout, oi, perm, autos))
        proj.append(_projection(layout, oi, perm, autos))
    pos = {y: i for i, y in enumerate(layout.objects)}
    idem, maps = {}, {}
    for g, (y, z, h) in key.items():
        idem[g] = layout.object_unit(pos[z])
        maps[g] = matmul(matmul(emb[pos[z]], _canonical_action(layout, rho, chi, h)), proj[pos[y]])
    return validate_partial_action(G, A, idem, maps), layout


def restrict_to_ideal(pa: PartialAction, e) -> PartialAction:
    """Restriction of a global action to the ideal ``A e``:
    ``1'_g = e alpha_g(e 1_{g^-1})`` and ``alpha'_g`` is ``alpha_g`` there."""
    A, G = pa.algebra, pa.groupoid
    space = idempotent_ideal(A, e)
    sub = subalgebra(A, space.basis, e, labels=[_label_of(A, b) for b in space.basis])
    idem = {}
    for g in G.morphisms:
        gi = G.inv(g)
        full = A.mul(e, pa.apply(g, A.mul(e, pa.idem[gi])))
        idem[g] = sub.restrict(full)
    maps = {}
    for g in G.morphisms:
        gi = G.inv(g)
        dom = A.mul(e, pa.apply(gi, A.mul(e, pa.idem[g])))   # 1'_{g^-1}
        cols = []
        for b in sub.inclusion:
            cols.append(sub.restrict(pa.apply(g, A.mul(b, dom))))
        maps[g] = [list(r) for r in zip(*cols)] if cols else []
    return validate_partial_action(G, sub.algebra, idem, maps)


def _label_of(A, v):
    nz = [i for i, x in enumerate(v) if x]
    if len(nz) == 1 and v[nz[0]] == 1:
        return A.labels[nz[0]]
    return "+".join(A.labels[i] for i in nz)


def direct_sum(p1: PartialAction, p2: PartialAction) -> PartialAction:
    """Action of the disjoint union on ``A1 x A2``."""
    A1, A2 = p1.algebra, p2.algebra
    n1, n2 = A1.dim, A2.dim
    table = dict(A1.table)
    for (i, j), v in A2.table.items():
        table[(i + n1, j + n1)] = {k + n1: x for k, x in v.items()}
    A = StructAlgebra(list(A1.labels) + list(A2.labels), table, tuple(A1.unit) + tuple(A2.unit))
    G = disjoint_union(p1.groupoid, p2.groupoid)
    idem, maps = {}, {}
    for g in p1.groupoid.morphisms:
        idem[g] = tuple(p1.idem[g]) + (Q(0),) * n2
        M = zero_matrix(n1 + n2, n1 + n2)
        for i, row in enumerate(p1.maps[g]):
            M[i][:n1] = row
        maps[g] = M
    for g in p2.groupoid.morphisms:
        idem[g] = (Q(0),) * n1 + tuple(p2.idem[g])
        M = zero_matrix(n1 + n2, n1 + n2)
        for i, row in enumerate(p2.maps[g]):
            M[n1 + i][n1:] = row
        maps[g] = M
    return validate_partial_action(G, A, idem, maps)


# random instances -------------------------------------------------------------------

@dataclass
class GeneratedInstance:
    action: PartialAction
    recipe: dict


def _random_names(rng, count, prefix="g"):
    nums = list(range(count))
    rng.shuffle(nums)
    return [f"{prefix}{k}" for k in nums]


def _connected_piece(rng, objects, max_dim, max_group, name_pool):
    options = [n for n, H in GROUPS.items() if len(H.elements) <= max_group]
    H = GROUPS[rng.choice(options)]
    kinds = [k for k in BLOCK_KINDS if len(objects) * block_dim(k) <= max_dim]
    kind = rng.choice(kinds)
    max_m = max(1, min(3, max_dim // (len(objects) * block_dim(kind))))
    m = rng.randint(1, max_m)

    def name_of(y, z, h):
        if y == z and h == H.unit:
            return f"id:{y}"
        return name_pool.pop()

    pa, layout = global_block_action(objects, H, kind, m, rng, name_of=name_of)
    return pa, layout, {"objects": list(objects), "group": H.name, "block": kind, "blocks_per_object": m}


def random_instance(rng: random.Random, *, max_objects=3, max_dim=12, max_group=4,
                    p_restrict=0.6, p_union=0.2) -> GeneratedInstance:
    """One random partial action; the recipe records every choice made."""
    k = rng.randint(1, max(1, min(max_objects, max_dim)))
    objects = [f"o{i}" for i in range(k)]
    pieces = [objects]
    if k >= 2 and rng.random() < p_union:
        cut = rng.randint(1, k - 1)
        pieces = [objects[:cut], objects[cut:]]
    pool = _random_names(rng, 4 * max_group * max_objects ** 2)
    budget = max_dim
    actions, recipe = [], {"pieces": []}
    layouts = []
    for i, objs in enumerate(pieces):
        share = budget if i == len(pieces) - 1 else max(len(objs), budget * len(objs) // k)
        pa, layout, r = _connected_piece(rng, objs, share, max_group, pool)
        budget -= pa.algebra.dim
        actions.append(pa)
        layouts.append(layout)
        recipe["pieces"].append(r)
    pa = actions[0]
    for other in actions[1:]:
        pa = direct_sum(pa, other)
    recipe["restricted"] = False
    if rng.random() < p_restrict:
        blocks = []
        offset = 0
        for layout in layouts:
            for oi in range(len(layout.objects)):
                for j in range(layout.m):
                    v = layout.block_unit(oi, j)
                    blocks.append((Q(0),) * offset + v + (Q(0),) * (pa.algebra.dim - offset - len(v)))
            offset += layout.dim
        keep = [b for b in blocks if rng.random() < 0.6] or [rng.choice(blocks)]
        if len(keep) == len(blocks) > 1:
            keep.remove(rng.choice(keep))
        if len(keep) < len(blocks):
            e = tuple(sum(col) for col in zip(*keep))
            pa = restrict_to_ideal(pa, e)
            recipe["restricted"] = True
            recipe["kept_blocks"] = len(keep)
    recipe["dim"] = pa.algebra.dim
    return GeneratedInstance(pa, recipe)
