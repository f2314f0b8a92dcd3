"""JSON instance files: parsing, building validated objects, serialization.

Rationals are always strings (``"3"``, ``"-1/2"``).  Algebra elements and
map images are sparse objects keyed by basis label.  Unknown keys are
rejected.  Example skeleton::

    {"format": "skewgroupoid-instance/1",
     "meta": {"name": "e57", "base_object": "x"},
     "groupoid": {"objects": ["x", "y"],
                  "morphisms": [{"id": "l", "src": "x", "tgt": "y", "inverse": "l^-1"}, ...],
                  "compositions": [["l", "g", "m"], ...]},
     "algebra": {"basis": ["e1", ...], "products": [["e1", "e1", {"e1": "1"}], ...],
                 "unit": {"e1": "1", ...}},
     "action": {"idempotents": {"id:x": {...}, ...},
                "maps": {"l": {"e1": {"e3": "1"}, ...}, ...}}}
"""
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .action import PartialAction, validate_partial_action
from .algebra import StructAlgebra
from .errors import ParseError
from .groupoid import Groupoid, validate_groupoid
from .linalg import Q, format_rational, parse_rational

FORMAT = "skewgroupoid-instance/1"

_TOP = {"format", "meta", "groupoid", "algebra", "action"}
_META = {"name", "base_object", "transversal", "description"}
_GROUPOID = {"objects", "identities", "morphisms", "compositions"}
_MORPHISM = {"id", "src", "tgt", "inverse"}
_ALGEBRA = {"basis", "products", "unit"}
_ACTION = {"idempotents", "maps"}

FIXTURES = ("e57", "e57_shrunk", "trivial", "coarse2", "matrix2")


@dataclass
class InstanceFile:
    name: str
    objects: list
    morphisms: list                      # (id, src, tgt) for non-identity morphisms
    compositions: list                   # (g, h, gh)
    identities: dict
    inverses: dict
    basis: list
    products: dict                       # (i, j) -> {k: Fraction}
    unit: tuple
    idempotents: dict                    # morphism id -> coordinate tuple
    maps: dict                           # morphism id -> matrix (rows)
    meta: dict = field(default_factory=dict)

    @property
    def dim(self):
        return len(self.basis)

    def build_groupoid(self) -> Groupoid:
        return validate_groupoid(self.objects, self.morphisms, self.compositions,
                                 self.identities or None, self.inverses or None)

    def build_algebra(self) -> StructAlgebra:
        return StructAlgebra(self.basis, self.products, self.unit)

    def build(self) -> PartialAction:
        """Validate groupoid, algebra and action, in that order."""
        G = self.build_groupoid()
        A = self.build_algebra()
        missing = [g for g in G.morphisms if g not in self.idempotents]
        idem = dict(self.idempotents)
        for g in missing:
            if G.is_identity(g):
                continue
            raise ParseError(f"no idempotent for morphism {g!r}", path="action.idempotents")
        for y in G.objects:
            if G.identity[y] not in idem:
                raise ParseError(f"no idempotent for object {y!r}", path="action.idempotents")
        return validate_partial_action(G, A, idem, self.maps)


# parsing -------------------------------------------------------------------------

def _keys(obj, allowed, path, required=()):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", path=path)
    extra = set(obj) - set(allowed)
    if extra:
        raise ParseError(f"unknown key(s) {sorted(extra)}", path=path)
    for k in required:
        if k not in obj:
            raise ParseError(f"missing key {k!r}", path=path)


def _rat(text, path):
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise ParseError(str(exc), path=path) from None


def _vector(obj, index, path):
    if not isinstance(obj, dict):
        raise ParseError("expected an object mapping basis labels to rationals", path=path)
    v = [Q(0)] * len(index)
    for label, val in obj.items():
        if label not in index:
            raise ParseError(f"unknown basis label {label!r}", path=path)
        v[index[label]] = _rat(val, f"{path}.{label}")
    return tuple(v)


def _string_list(obj, path):
    if not isinstance(obj, list) or not all(isinstance(x, str) for x in obj):
        raise ParseError("expected a list of strings", path=path)
    return list(obj)


def loads_instance(text, source="<string>") -> InstanceFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in {source}: {exc.msg}", line=exc.lineno, column=exc.colno) from None
    return instance_from_dict(data)


def parse_instance(path) -> InstanceFile:
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    inst = loads_instance(text, str(path))
    if not inst.name:
        inst.name = path.stem
    return inst


def instance_from_dict(data) -> InstanceFile:
    _keys(data, _TOP, "$", required=("groupoid", "algebra", "action"))
    if data.get("format", FORMAT) != FORMAT:
        raise ParseError(f"unsupported format {data.get('format')!r}", path="$.format")
    meta = data.get("meta", {})
    _keys(meta, _META, "$.meta")

    g = data["groupoid"]
    _keys(g, _GROUPOID, "$.groupoid", required=("objects", "morphisms"))
    objects = _string_list(g["objects"], "$.groupoid.objects")
    if len(set(objects)) != len(objects):
        raise ParseError("duplicate object ids", path="$.groupoid.objects")
    identities = g.get("identities", {})
    _keys(identities, set(objects), "$.groupoid.identities")
    morphisms, inverses = [], {}
    if not isinstance(g["morphisms"], list):
        raise ParseError("expected a list", path="$.groupoid.morphisms")
    for i, m in enumerate(g["morphisms"]):
        p = f"$.groupoid.morphisms[{i}]"
        _keys(m, _MORPHISM, p, required=("id", "src", "tgt"))
        for k in ("src", "tgt"):
            if m[k] not in objects:
                raise ParseError(f"{k} {m[k]!r} is not a declared object", path=f"{p}.{k}")
        morphisms.append((m["id"], m["src"], m["tgt"]))
        if "inverse" in m:
            inverses[m["id"]] = m["inverse"]
    known = {m[0] for m in morphisms} | set(identities.values()) | {f"id:{o}" for o in objects}
    compositions = []
    for i, c in enumerate(g.get("compositions", [])):
        p = f"$.groupoid.compositions[{i}]"
        if not (isinstance(c, list) and len(c) == 3 and all(isinstance(x, str) for x in c)):
            raise ParseError("composition must be [g, h, gh]", path=p)
        for x in c:
            if x not in known:
                raise ParseError(f"unknown morphism {x!r}", path=p)
        compositions.append(tuple(c))

    a = data["algebra"]
    _keys(a, _ALGEBRA, "$.algebra", required=("basis", "products", "unit"))
    basis = _string_list(a["basis"], "$.algebra.basis")
    if not basis or len(set(basis)) != len(basis):
        raise ParseError("basis must be a nonempty list of distinct labels", path="$.algebra.basis")
    index = {b: i for i, b in enumerate(basis)}
    products = {}
    for i, entry in enumerate(a["products"]):
        p = f"$.algebra.products[{i}]"
        if not (isinstance(entry, list) and len(entry) == 3):
            raise ParseError("product must be [left, right, {label: rational}]", path=p)
        left, right, val = entry
        if left not in index or right not in index:
            raise ParseError("unknown basis label in product", path=p)
        key = (index[left], index[right])
        if key in products:
            raise ParseError(f"product {left}*{right} given twice", path=p)
        products[key] = {k: x for k, x in enumerate(_vector(val, index, p)) if x}
    unit = _vector(a["unit"], index, "$.algebra.unit")

    act = data["action"]
    _keys(act, _ACTION, "$.action", required=("idempotents", "maps"))
    idem = {}
    for mid, v in act["idempotents"].items():
        if mid not in known:
            raise ParseError(f"unknown morphism {mid!r}", path="$.action.idempotents")
        idem[mid] = _vector(v, index, f"$.action.idempotents.{mid}")
    maps = {}
    n = len(basis)
    for mid, spec in act["maps"].items():
        p = f"$.action.maps.{mid}"
        if mid not in known:
            raise ParseError(f"unknown morphism {mid!r}", path=p)
        if isinstance(spec, list):
            if len(spec) != n or any(not isinstance(r, list) or len(r) != n for r in spec):
                raise ParseError(f"matrix must be {n}x{n}", path=p)
            maps[mid] = [[_rat(x, p) for x in row] for row in spec]
        else:
            if not isinstance(spec, dict):
                raise ParseError("map must be a matrix or an images object", path=p)
            cols = [[Q(0)] * n for _ in range(n)]
            for label, img in spec.items():
                if label not in index:
                    raise ParseError(f"unknown basis label {label!r}", path=p)
                cols[index[label]] = list(_vector(img, index, f"{p}.{label}"))
            maps[mid] = [list(r) for r in zip(*cols)]

    return InstanceFile(
        name=meta.get("name", ""), objects=objects, morphisms=morphisms,
        compositions=compositions, identities=dict(identities), inverses=inverses,
        basis=basis, products=products, unit=unit, idempotents=idem, maps=maps,
        meta=dict(meta))


# serialization ---------------------------------------------------------------------

def _sparse_labels(v, labels):
    return {labels[i]: format_rational(x) for i, x in enumerate(v) if x}


def instance_to_dict(inst: InstanceFile) -> dict:
    labels = inst.basis
    n = len(labels)
    maps = {}
    for mid, M in inst.maps.items():
        maps[mid] = {labels[j]: _sparse_labels([M[i][j] for i in range(n)], labels)
                     for j in range(n) if any(M[i][j] for i in range(n))}
    morphisms = []
    for g, s, t in inst.morphisms:
        m = {"id": g, "src": s, "tgt": t}
        if g in inst.inverses:
            m["inverse"] = inst.inverses[g]
        morphisms.append(m)
    out = {
        "format": FORMAT,
        "meta": dict(inst.meta, name=inst.name),
        "groupoid": {
            "objects": list(inst.objects),
            "morphisms": morphisms,
            "compositions": [list(c) for c in inst.compositions],
        },
        "algebra": {
            "basis": list(labels),
            "products": [[labels[i], labels[j], _sparse_labels_dict(v, labels)]
                         for (i, j), v in sorted(inst.products.items())],
            "unit": _sparse_labels(inst.unit, labels),
        },
        "action": {
            "idempotents": {g: _sparse_labels(v, labels) for g, v in inst.idempotents.items()},
            "maps": maps,
        },
    }
    if inst.identities:
        out["groupoid"]["identities"] = dict(inst.identities)
    return out


def _sparse_labels_dict(v, labels):
    return {labels[k]: format_rational(x) for k, x in sorted(v.items()) if x}


def dumps_instance(inst: InstanceFile) -> str:
    return json.dumps(instance_to_dict(inst), indent=1, sort_keys=True)


def write_instance(inst: InstanceFile, path):
    Path(path).write_text(dumps_instance(inst) + "\n")


def instance_from_action(pa: PartialAction, name="instance", meta=None) -> InstanceFile:
    """Serialize a partial action whose ids are strings.  Every composite of
    non-identity morphisms is written out, so no inference is needed on
    reading it back."""
    G, A = pa.groupoid, pa.algebra
    ids = set(G.identity.values())
    morphisms = [(g, G.src[g], G.tgt[g]) for g in G.morphisms if g not in ids]
    comps = [(g, h, k) for (g, h), k in G.comp.items() if g not in ids and h not in ids]
    inverses = {g: G.inverse[g] for g, _, _ in morphisms}
    identities = {y: G.identity[y] for y in G.objects if G.identity[y] != f"id:{y}"}
    return InstanceFile(
        name=name, objects=list(G.objects), morphisms=morphisms, compositions=comps,
        identities=identities, inverses=inverses, basis=list(A.labels),
        products={k: dict(v) for k, v in A.table.items()}, unit=A.unit,
        idempotents={g: pa.idem[g] for g in G.morphisms},
        maps={g: pa.maps[g] for g in G.morphisms if g not in ids},
        meta=dict(meta or {}))


def semantically_equal(a: InstanceFile, b: InstanceFile) -> bool:
    """Same groupoid table, algebra and action after building both."""
    pa, pb = a.build(), b.build()
    Ga, Gb = pa.groupoid, pb.groupoid
    return (set(Ga.objects) == set(Gb.objects) and Ga.comp == Gb.comp and Ga.src == Gb.src
            and pa.algebra.labels == pb.algebra.labels and pa.algebra.table == pb.algebra.table
            and pa.algebra.unit == pb.algebra.unit and pa.idem == pb.idem and pa.maps == pb.maps)


def fixture_path(name) -> Path:
    return Path(str(resources.files("skewgroupoid") / "data" / f"{name}.json"))


def load_fixture(name) -> InstanceFile:
    return parse_instance(fixture_path(name))
