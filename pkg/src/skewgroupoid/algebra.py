"""Finite-dimensional unital algebras over Q given by structure constants."""
from collections import defaultdict
from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import (
    AlgebraAxiomViolation,
    AssociativityFailure,
    InvalidElement,
    NotASubring,
    NotCentralIdempotent,
)
from .linalg import (
    Q,
    SparseSpan,
    Subspace,
    is_zero,
    matvec,
    sparse_nullspace,
    sparse_rank,
    to_dense,
    to_sparse,
    unit_vector,
    vsub,
)


def _axpy(acc, c, vec):
    # acc += c * vec, sparse dicts, dropping zeros
    for k, x in vec.items():
        y = acc.get(k, 0) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)


class StructAlgebra:
    """Associative unital Q-algebra with basis ``u_0 .. u_{dim-1}``.

    ``table`` maps ``(i, j)`` to the sparse coordinate dict of ``u_i u_j``;
    missing pairs multiply to zero.  Construction validates associativity on
    every basis triple and the two-sided unit unless ``validate=False``.
    Instances are treated as immutable.
    """

    def __init__(self, labels, table, unit, *, validate=True):
        self.labels = tuple(str(x) for x in labels)
        self.dim = len(self.labels)
        if len(set(self.labels)) != self.dim:
            raise AlgebraAxiomViolation("duplicate basis labels")
        n = self.dim
        clean = {}
        for (i, j), vec in table.items():
            if not (0 <= i < n and 0 <= j < n):
                raise AlgebraAxiomViolation(f"basis index out of range in product ({i}, {j})")
            if isinstance(vec, dict):
                vec = {k: Q(x) for k, x in vec.items() if x}
            else:
                vec = to_sparse(tuple(Q(x) for x in vec))
            if any(not 0 <= k < n for k in vec):
                raise AlgebraAxiomViolation(f"product ({i}, {j}) has out-of-range coordinates")
            if vec:
                clean[(i, j)] = vec
        self.table = clean
        self.unit = self.element(unit)
        self._right = defaultdict(list)
        self._left = defaultdict(list)
        for (i, j) in sorted(clean):
            self._right[i].append(j)
            self._left[j].append(i)
        if validate:
            self.validate()

    # elements -----------------------------------------------------------
    def element(self, coords):
        v = tuple(Q(x) for x in coords)
        if len(v) != self.dim:
            raise InvalidElement(f"expected {self.dim} coordinates, got {len(v)}")
        return v

    def zero(self):
        return (Q(0),) * self.dim

    def basis_element(self, i):
        return unit_vector(self.dim, i)

    def label_index(self, label):
        return self.labels.index(label)

    def mul(self, a, b):
        if len(a) != self.dim or len(b) != self.dim:
            raise InvalidElement(f"element dimension mismatch (algebra has dim {self.dim})")
        acc = {}
        bnz = {j: y for j, y in enumerate(b) if y}
        if not bnz:
            return self.zero()
        for i, x in enumerate(a):
            if not x:
                continue
            for j in self._right.get(i, ()):
                y = bnz.get(j)
                if y:
                    _axpy(acc, x * y, self.table[(i, j)])
        return to_dense(acc, self.dim)

    def mul_sparse(self, a: dict, b: dict) -> dict:
        acc = {}
        for i, x in a.items():
            for j in self._right.get(i, ()):
                y = b.get(j)
                if y:
                    _axpy(acc, x * y, self.table[(i, j)])
        return acc

    def product(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def commutes(self, a, b) -> bool:
        return self.mul(a, b) == self.mul(b, a)

    def left_matrix(self, a):
        """Matrix of ``v -> a v``."""
        cols = [self.mul(a, self.basis_element(j)) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    def right_matrix(self, a):
        """Matrix of ``v -> v a``."""
        cols = [self.mul(self.basis_element(j), a) for j in range(self.dim)]
        return [list(r) for r in zip(*cols)] if cols else []

    # validation ---------------------------------------------------------
    def validate(self):
        n = self.dim
        e = self.unit
        for i in range(n):
            u = self.basis_element(i)
            if self.mul(e, u) != u or self.mul(u, e) != u:
                raise AlgebraAxiomViolation(
                    f"unit is not a two-sided identity on {self.labels[i]}", witness=(self.labels[i],))
        failure = associativity_failure(self)
        if failure is not None:
            i, j, k = failure
            raise AssociativityFailure(
                f"(u{i} u{j}) u{k} != u{i} (u{j} u{k})",
                witness=(self.labels[i], self.labels[j], self.labels[k]))
        return self

    def is_commutative(self):
        return all(self.table.get((i, j), {}) == self.table.get((j, i), {})
                   for i in range(self.dim) for j in range(i + 1, self.dim))

    def __repr__(self):
        return f"StructAlgebra(dim={self.dim}, labels={list(self.labels)[:6]}{'...' if self.dim > 6 else ''})"


def associativity_failure(A: StructAlgebra):
    """First basis triple on which associativity fails, or ``None``.

    Both bracketings are accumulated sparsely so only triples with a nonzero
    side are touched; every one of the ``dim**3`` triples is still decided.
    """
    # scale by a common denominator so the sweep runs on Python ints;
    # both bracketings pick up the same factor D**2
    D = 1
    for p in A.table.values():
        for c in p.values():
            D = D * c.denominator // gcd(D, c.denominator)
    table = {key: {k: int(c * D) for k, c in p.items()} for key, p in A.table.items()}
    left = defaultdict(dict)
    for (i, j), p in table.items():
        for m, c in p.items():
            for k in A._right.get(m, ()):
                _axpy(left[(i, j, k)], c, table[(m, k)])
    right = defaultdict(dict)
    for (j, k), p in table.items():
        for m, c in p.items():
            for i in A._left.get(m, ()):
                _axpy(right[(i, j, k)], c, table[(i, m)])
    bad = [t for t in set(left) | set(right) if left.get(t, {}) != right.get(t, {})]
    return min(bad) if bad else None


def multiply(A: StructAlgebra, a, b):
    return A.mul(a, b)


def center(A: StructAlgebra):
    """Q-basis of the center, as the kernel of ``a -> (a u_i - u_i a)_i``."""
    n = A.dim
    cols = []
    for j in range(n):
        col = {}
        for i in range(n):
            for k, x in A.product(j, i).items():
                _axpy(col, Q(1), {i * n + k: x})
            for k, x in A.product(i, j).items():
                _axpy(col, Q(-1), {i * n + k: x})
        cols.append(col)
    return sparse_nullspace(cols)


def is_central_idempotent(A: StructAlgebra, e) -> bool:
    if A.mul(e, e) != tuple(e):
        return False
    return all(A.commutes(e, A.basis_element(i)) for i in range(A.dim))


def check_central_idempotent(A: StructAlgebra, e, name="element"):
    e = A.element(e)
    if A.mul(e, e) != e:
        raise NotCentralIdempotent(f"{name} is not idempotent", witness=(name,))
    for i in range(A.dim):
        if not A.commutes(e, A.basis_element(i)):
            raise NotCentralIdempotent(
                f"{name} does not commute with {A.labels[i]}", witness=(name, A.labels[i]))
    return e


def idempotent_ideal(A: StructAlgebra, e) -> Subspace:
    """The ideal ``A e`` as a subspace; basis vectors are the independent
    products ``u_i e`` in algebra order."""
    e = check_central_idempotent(A, e)
    return Subspace([A.mul(A.basis_element(i), e) for i in range(A.dim)], A.dim)


def idempotent_ideal_basis(A: StructAlgebra, e):
    return list(idempotent_ideal(A, e).basis)


# ring maps ------------------------------------------------------------------

@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    witness: Optional[object] = None

    def as_dict(self):
        return {"name": self.name, "status": "pass" if self.passed else "fail",
                "detail": self.detail, "witness": _jsonable(self.witness)}


def _jsonable(w):
    if w is None:
        return None
    if isinstance(w, (list, tuple)):
        return [_jsonable(x) for x in w]
    if isinstance(w, dict):
        return {str(k): _jsonable(v) for k, v in w.items()}
    if isinstance(w, (str, int, bool)):
        return w
    return str(w)


@dataclass
class VerificationReport:
    subject: str
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)

    def add(self, name, passed, detail="", witness=None):
        self.checks.append(Check(name, bool(passed), detail, witness))
        return bool(passed)

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    @property
    def first_failure(self):
        return next((c for c in self.checks if not c.passed), None)

    def __bool__(self):
        return self.ok

    def as_dict(self):
        return {"subject": self.subject, "ok": self.ok, "checks": [c.as_dict() for c in self.checks],
                "facts": _jsonable(self.facts)}


@dataclass
class LinMap:
    """Linear map given by a ``target.dim x source.dim`` matrix."""
    matrix: list
    source: StructAlgebra
    target: StructAlgebra

    def __post_init__(self):
        if len(self.matrix) != self.target.dim or any(len(r) != self.source.dim for r in self.matrix):
            raise InvalidElement("matrix shape does not match source/target dimensions")

    def __call__(self, v):
        return matvec(self.matrix, v)


def verify_ring_map(f: LinMap, domain_basis=None, check_unit=False, *,
                    domain_unit=None, target_unit=None, target_span=None,
                    name="map") -> VerificationReport:
    """Check that ``f`` is a ring isomorphism from span(domain_basis) onto
    ``target_span`` (defaults: all of source, all of target).

    Multiplicativity is tested on every ordered pair of domain basis vectors;
    the first failing pair is the witness.
    """
    src, tgt = f.source, f.target
    if domain_basis is None:
        domain_basis = [src.basis_element(i) for i in range(src.dim)]
    rep = VerificationReport(name)
    images = [f(b) for b in domain_basis]
    witness = None
    for i, a in enumerate(domain_basis):
        for j, b in enumerate(domain_basis):
            if f(src.mul(a, b)) != tgt.mul(images[i], images[j]):
                witness = (i, j)
                break
        if witness:
            break
    rep.add("multiplicative", witness is None,
            "f(ab) = f(a) f(b) on all basis pairs", witness)
    rk = sparse_rank([to_sparse(v) for v in images])
    rep.add("injective", rk == len(domain_basis), f"rank {rk} on domain of dim {len(domain_basis)}")
    if target_span is None:
        target_span = Subspace([tgt.basis_element(i) for i in range(tgt.dim)], tgt.dim)
    inside = all(v in target_span for v in images)
    rep.add("surjective", inside and rk == target_span.dim,
            f"image rank {rk}, target dim {target_span.dim}, image inside target: {inside}")
    if check_unit:
        u = domain_unit if domain_unit is not None else src.unit
        expected = target_unit if target_unit is not None else tgt.unit
        rep.add("unital", f(u) == expected, "image of the domain unit is the target unit")
    return rep


# subalgebras ------------------------------------------------------------------

@dataclass
class Subalgebra:
    """A unital subalgebra (for example an ideal ``A e``) realized as its own
    ``StructAlgebra`` together with the inclusion into the ambient algebra."""
    algebra: StructAlgebra
    ambient: StructAlgebra
    inclusion: list
    space: Subspace

    def lift(self, v):
        acc = [Q(0)] * self.ambient.dim
        for c, b in zip(v, self.inclusion):
            if c:
                for k, x in enumerate(b):
                    if x:
                        acc[k] += c * x
        return tuple(acc)

    def restrict(self, v):
        return self.space.coords(v)


def subalgebra(A: StructAlgebra, basis, unit, labels=None) -> Subalgebra:
    """Realize the span of ``basis`` (closed under products, containing
    ``unit`` as its identity) as a standalone algebra."""
    space = Subspace(basis, A.dim)
    basis = space.basis
    if labels is None:
        labels = []
        for b in basis:
            nz = [i for i, x in enumerate(b) if x]
            if len(nz) == 1 and b[nz[0]] == 1:
                labels.append(A.labels[nz[0]])
            else:
                labels.append(f"b{len(labels)}")
    table = {}
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            p = A.mul(a, b)
            try:
                table[(i, j)] = space.coords(p)
            except ValueError:
                raise NotASubring("span is not closed under multiplication",
                                  witness=(labels[i], labels[j])) from None
    try:
        u = space.coords(unit)
    except ValueError:
        raise NotASubring("unit does not lie in the span") from None
    alg = StructAlgebra(labels, table, u)
    return Subalgebra(alg, A, list(basis), space)


# tensor products over a subring ------------------------------------------------

class BimoduleTensorSpace:
    """``S (x)_R S`` as the quotient of ``S (x)_Q S`` by the relations
    ``s r (x) s' - s (x) r s'`` for basis elements ``s, s'`` of S and ``r`` of R.

    Ambient coordinates index ``u_i (x) u_j`` by ``i * dim + j``.  The
    quotient basis consists of the ambient indices that are not pivots of the
    reduced relation span, so ``project(lift(q)) == q``.
    """

    def __init__(self, S: StructAlgebra, R_basis):
        self.S = S
        n = S.dim
        self.R_basis = [S.element(r) for r in R_basis]
        self._check_subring()
        self.relations = SparseSpan()
        self._generators = 0
        for r in self.R_basis:
            rs = to_sparse(r)
            right_by_r = [S.mul_sparse({i: Q(1)}, rs) for i in range(n)]
            left_by_r = [S.mul_sparse(rs, {j: Q(1)}) for j in range(n)]
            for i in range(n):
                for j in range(n):
                    rel = {}
                    for k, x in right_by_r[i].items():
                        _axpy(rel, x, {k * n + j: Q(1)})
                    for k, x in left_by_r[j].items():
                        _axpy(rel, -x, {i * n + k: Q(1)})
                    self._generators += 1
                    if rel:
                        self.relations.insert(rel)
        pivots = set(self.relations.rows)
        self.quotient_index = [k for k in range(n * n) if k not in pivots]
        self._position = {k: p for p, k in enumerate(self.quotient_index)}

    def _check_subring(self):
        S = self.S
        span = Subspace(self.R_basis, S.dim)
        if S.unit not in span:
            raise NotASubring("subring does not contain the unit of S")
        for a in span.basis:
            for b in span.basis:
                if S.mul(a, b) not in span:
                    raise NotASubring("subring basis is not multiplicatively closed")
        self.R_space = span

    @property
    def dim(self):
        return len(self.quotient_index)

    @property
    def relation_rank(self):
        return len(self.relations)

    # ambient tensors are sparse dicts over i * n + j
    def pure(self, a, b) -> dict:
        n = self.S.dim
        out = {}
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i * n + j] = x * y
        return out

    def tensor(self, pairs) -> dict:
        acc = {}
        for a, b in pairs:
            _axpy(acc, Q(1), self.pure(a, b))
        return acc

    def project(self, t: dict):
        red = self.relations.reduce(t)
        out = [Q(0)] * self.dim
        for k, x in red.items():
            out[self._position[k]] = x
        return tuple(out)

    def lift(self, q) -> dict:
        return {self.quotient_index[p]: x for p, x in enumerate(q) if x}

    def equal(self, t1: dict, t2: dict) -> bool:
        diff = dict(t1)
        _axpy(diff, Q(-1), t2)
        return not self.relations.reduce(diff)

    def multiply_map(self, t: dict):
        """The multiplication map ``m(a (x) b) = ab`` on an ambient tensor."""
        n = self.S.dim
        acc = {}
        for k, x in t.items():
            i, j = divmod(k, n)
            _axpy(acc, x, self.S.product(i, j))
        return to_dense(acc, n)

    def left_act(self, s, t: dict) -> dict:
        n = self.S.dim
        ss = to_sparse(s)
        acc = {}
        for k, x in t.items():
            i, j = divmod(k, n)
            for m, y in self.S.mul_sparse(ss, {i: Q(1)}).items():
                _axpy(acc, x * y, {m * n + j: Q(1)})
        return acc

    def right_act(self, t: dict, s) -> dict:
        n = self.S.dim
        ss = to_sparse(s)
        acc = {}
        for k, x in t.items():
            i, j = divmod(k, n)
            for m, y in self.S.mul_sparse({j: Q(1)}, ss).items():
                _axpy(acc, x * y, {i * n + m: Q(1)})
        return acc

    def relation_generators(self):
        """Yield every defining relation as an ambient tensor (for checks)."""
        S, n = self.S, self.S.dim
        for r in self.R_basis:
            for i in range(n):
                for j in range(n):
                    a = S.mul(S.basis_element(i), r)
                    b = S.mul(r, S.basis_element(j))
                    t = self.pure(a, S.basis_element(j))
                    _axpy(t, Q(-1), self.pure(S.basis_element(i), b))
                    yield t


def tensor_over_subring(S: StructAlgebra, R_basis) -> BimoduleTensorSpace:
    return BimoduleTensorSpace(S, R_basis)


def same_span(vectors_a, vectors_b, n) -> bool:
    return Subspace(vectors_a, n) == Subspace(vectors_b, n)


def multiplication_matrix_by(A: StructAlgebra, e):
    """Matrix of multiplication by a central element ``e``."""
    return A.left_matrix(e)


__all__ = [
    "StructAlgebra", "LinMap", "Check", "VerificationReport", "Subalgebra",
    "BimoduleTensorSpace", "multiply", "center", "idempotent_ideal",
    "idempotent_ideal_basis", "check_central_idempotent", "is_central_idempotent",
    "verify_ring_map", "tensor_over_subring", "subalgebra", "associativity_failure",
    "same_span", "is_zero", "vsub",
]
