"""JSON definition files and verification reports.

A definition file is a JSON object::

    {"format": "ydbrauer/1",
     "field": {"kind": "gf", "p": 5},            # or {"kind": "rationals"}
     "objects": [ {"name": ..., "type": ..., ...}, ... ]}

Object types and their keys (arrays in index form, scalars as strings):

* ``hopf``: ``mult[i][j][k]``, ``unit[k]``, ``comult[i][j][k]``, ``counit[i]``,
  ``antipode[i][j]``, optional ``antipode_inverse`` and ``basis``
* ``automorphism``: ``hopf``, ``matrix[i][j]`` = coefficient of b_j in a(b_i)
* ``yd_module``: ``hopf``, ``dim``, ``action[h][m][o]``, ``coaction[m][o][k]``,
  ``alpha``/``beta`` naming an automorphism, ``"id"`` or ``"s2"``
* ``yd_algebra``: ``module``, ``mult``, ``unit``
* ``character``: ``hopf``, ``values``
* ``grouplike``: ``hopf``, ``vector``, optional ``inverse``

Parsing checks shapes, field membership and references.  Automorphisms are
checked to be Hopf automorphisms; every other axiom is left to ``verify``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .errors import ParseError, ValidationError, YDBrauerError
from .exact_linalg import FieldSpec, Matrix
from .hopf_core import (AutPair, Character, GroupLikeElement, HopfAlgebra, HopfAutomorphism,
                        _automorphism_failures, same_parent)
from .yd_algebras import YDAlgebra
from .yd_modules import YDModule

FORMAT = "ydbrauer/1"
OBJECT_TYPES = ("hopf", "automorphism", "yd_module", "yd_algebra", "character", "grouplike")


@dataclass
class DefinitionFile:
    field: FieldSpec
    objects: dict = dc_field(default_factory=dict)

    def of_type(self, cls):
        return {k: v for k, v in self.objects.items() if isinstance(v, cls)}

    def __getitem__(self, name):
        return self.objects[name]

    def __eq__(self, other):
        if not isinstance(other, DefinitionFile):
            return NotImplemented
        return serialize(self) == serialize(other)


# -- parsing ------------------------------------------------------------------


def _field_from(doc) -> FieldSpec:
    spec = doc.get("field")
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("missing or malformed field declaration", "field")
    kind = spec["kind"]
    try:
        if kind == "gf":
            return FieldSpec.gf(int(spec["p"]))
        if kind in ("rationals", "Q"):
            return FieldSpec.rationals()
    except (KeyError, TypeError, ValueError, YDBrauerError) as exc:
        raise ValidationError(f"bad field: {exc}", "field") from None
    raise ValidationError(f"unknown field kind {kind!r}", "field.kind")


def _scalars(F: FieldSpec, data, shape, where):
    def walk(x, depth, loc):
        if depth == len(shape):
            if isinstance(x, bool) or not isinstance(x, (str, int)):
                raise ValidationError(f"expected a scalar string, got {type(x).__name__}", loc)
            try:
                return F.parse_scalar(x) if isinstance(x, str) else F.scalar(x)
            except (ValueError, ZeroDivisionError, YDBrauerError) as exc:
                raise ValidationError(f"{x!r} is not an element of {F}: {exc}", loc) from None
        if not isinstance(x, list):
            raise ValidationError(f"expected an array of length {shape[depth]}", loc)
        if len(x) != shape[depth]:
            raise ValidationError(f"has {len(x)} entries, expected {shape[depth]}", loc)
        return [walk(y, depth + 1, f"{loc}[{i}]") for i, y in enumerate(x)]

    if data is None:
        raise ValidationError("missing", where)
    out = F.array(walk(data, 0, where)) if shape else F.array([walk(data, 0, where)])
    return out.reshape(shape)


def _ref(defn: DefinitionFile, obj, key, cls, where):
    name = obj.get(key)
    if not isinstance(name, str):
        raise ValidationError(f"missing reference {key!r}", where)
    target = defn.objects.get(name)
    if target is None:
        raise ValidationError(f"unknown object {name!r}", f"{where}.{key}")
    if not isinstance(target, cls):
        raise ValidationError(f"{name!r} is not a {cls.__name__}", f"{where}.{key}")
    return target


def resolve_automorphism(H: HopfAlgebra, name: str, extra: dict | None = None) -> HopfAutomorphism:
    """``"id"``, ``"s2"``, a named automorphism of ``H`` or an entry of ``extra``."""
    if name == "id":
        return H.identity
    if name == "s2":
        return H.s2
    if extra and name in extra and same_parent(extra[name].parent, H):
        return extra[name]
    if name in H.known_automorphisms:
        return H.known_automorphisms[name]
    raise KeyError(name)


def _parse_object(defn: DefinitionFile, obj, where):
    F = defn.field
    t = obj.get("type")
    if t == "hopf":
        n = obj.get("dim")
        if n is None:
            unit = obj.get("unit")
            n = len(unit) if isinstance(unit, list) else None
        if not isinstance(n, int):
            raise ValidationError("cannot determine the dimension", where)
        mu = _scalars(F, obj.get("mult"), (n, n, n), f"{where}.mult")
        eta = _scalars(F, obj.get("unit"), (n,), f"{where}.unit")
        De = _scalars(F, obj.get("comult"), (n, n, n), f"{where}.comult")
        eps = _scalars(F, obj.get("counit"), (n,), f"{where}.counit")
        S = _scalars(F, obj.get("antipode"), (n, n), f"{where}.antipode")
        Sinv = None
        if "antipode_inverse" in obj:
            Sinv = _scalars(F, obj["antipode_inverse"], (n, n), f"{where}.antipode_inverse")
        labels = obj.get("basis")
        if labels is not None and (not isinstance(labels, list) or len(labels) != n):
            raise ValidationError(f"basis must list {n} labels", f"{where}.basis")
        try:
            return HopfAlgebra(F, mu, eta, De, eps, S, Sinv, basis_labels=labels, name=obj["name"])
        except YDBrauerError as exc:
            raise ValidationError(str(exc), where) from None
    if t == "automorphism":
        H = _ref(defn, obj, "hopf", HopfAlgebra, where)
        a = _scalars(F, obj.get("matrix"), (H.dim, H.dim), f"{where}.matrix")
        m = Matrix(F, a.T, reduced=True)
        bad = [what for what, ok in _automorphism_failures(H, m) if not ok]
        if bad:
            raise ValidationError(f"not a Hopf automorphism ({', '.join(bad)})", f"{where}.matrix")
        aut = HopfAutomorphism(H, m, check=False)
        H.known_automorphisms.setdefault(obj["name"], aut)
        return aut
    if t == "yd_module":
        H = _ref(defn, obj, "hopf", HopfAlgebra, where)
        d = obj.get("dim")
        if not isinstance(d, int) or d < 0:
            raise ValidationError("dim must be a non-negative integer", f"{where}.dim")
        act = _scalars(F, obj.get("action"), (H.dim, d, d), f"{where}.action")
        co = _scalars(F, obj.get("coaction"), (d, d, H.dim), f"{where}.coaction")
        autos = defn.of_type(HopfAutomorphism)
        pair = []
        for key in ("alpha", "beta"):
            nm = obj.get(key, "id")
            try:
                pair.append(resolve_automorphism(H, nm, autos))
            except KeyError:
                raise ValidationError(f"unknown automorphism {nm!r}", f"{where}.{key}") from None
        return YDModule(H, act, co, AutPair(*pair), name=obj["name"])
    if t == "yd_algebra":
        M = _ref(defn, obj, "module", YDModule, where)
        if not (M.pair.alpha.is_identity() and M.pair.beta.is_identity()):
            raise ValidationError("the module of an algebra must have pair (id, id)", f"{where}.module")
        d = M.dim
        mu = _scalars(F, obj.get("mult"), (d, d, d), f"{where}.mult")
        unit = _scalars(F, obj.get("unit"), (d,), f"{where}.unit")
        return YDAlgebra(M, mu, unit, name=obj["name"])
    if t == "character":
        H = _ref(defn, obj, "hopf", HopfAlgebra, where)
        return Character(H, _scalars(F, obj.get("values"), (H.dim,), f"{where}.values"), check=False)
    if t == "grouplike":
        H = _ref(defn, obj, "hopf", HopfAlgebra, where)
        v = _scalars(F, obj.get("vector"), (H.dim,), f"{where}.vector")
        inv = None
        if "inverse" in obj:
            inv = _scalars(F, obj["inverse"], (H.dim,), f"{where}.inverse")
        return GroupLikeElement(H, v, inv, check=False)
    raise ValidationError(f"unknown object type {t!r}; expected one of {OBJECT_TYPES}", f"{where}.type")


def parse_definition(source) -> DefinitionFile:
    """Parse a definition from a path or from JSON text."""
    if isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise ParseError(f"cannot read file: {exc.strerror}", str(path)) from None
    else:
        text = source
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object", "$")
    fmt = doc.get("format", FORMAT)
    if fmt != FORMAT:
        raise ValidationError(f"unsupported format {fmt!r}", "format")
    defn = DefinitionFile(_field_from(doc))
    objs = doc.get("objects", [])
    if not isinstance(objs, list):
        raise ParseError("objects must be an array", "objects")
    for i, obj in enumerate(objs):
        where = f"objects[{i}]"
        if not isinstance(obj, dict):
            raise ParseError("each object must be a JSON object", where)
        name = obj.get("name")
        if not isinstance(name, str) or not name:
            raise ValidationError("missing name", where)
        if name in defn.objects or name in ("id", "s2"):
            raise ValidationError(f"duplicate or reserved name {name!r}", f"{where}.name")
        defn.objects[name] = _parse_object(defn, obj, where)
    return defn


# -- serialization ------------------------------------------------------------


def _strings(F: FieldSpec, arr):
    arr = np.asarray(arr)
    if arr.ndim == 0:
        return F.format_scalar(arr.item())
    return [_strings(F, x) for x in arr]


class _Namer:
    def __init__(self, defn: DefinitionFile):
        self.defn = defn
        self.names = {id(v): k for k, v in defn.objects.items()}
        self.extra: list = []

    def name_of(self, obj, prefix):
        key = id(obj)
        if key in self.names:
            return self.names[key]
        if isinstance(obj, HopfAutomorphism):
            for k, v in self.defn.objects.items():
                if isinstance(v, HopfAutomorphism) and v == obj:
                    return k
        used = set(self.defn.objects) | {n for n, _ in self.extra}
        i = 1
        while f"{prefix}{i}" in used:
            i += 1
        nm = f"{prefix}{i}"
        self.names[key] = nm
        self.extra.append((nm, obj))
        return nm

    def auto_name(self, a: HopfAutomorphism):
        if a.is_identity():
            return "id"
        return self.name_of(a, "aut_")


def _object_doc(namer: _Namer, name, obj):
    F = namer.defn.field
    if isinstance(obj, HopfAlgebra):
        d = {"type": "hopf", "dim": obj.dim, "mult": _strings(F, obj.mu), "unit": _strings(F, obj.eta),
             "comult": _strings(F, obj.De), "counit": _strings(F, obj.eps),
             "antipode": _strings(F, obj.S), "antipode_inverse": _strings(F, obj.Sinv)}
        if obj.basis_labels is not None:
            d["basis"] = list(obj.basis_labels)
    elif isinstance(obj, HopfAutomorphism):
        d = {"type": "automorphism", "hopf": namer.name_of(obj.parent, "hopf_"),
             "matrix": _strings(F, obj.idx)}
    elif isinstance(obj, YDModule):
        d = {"type": "yd_module", "hopf": namer.name_of(obj.hopf, "hopf_"), "dim": obj.dim,
             "action": _strings(F, obj.act), "coaction": _strings(F, obj.co),
             "alpha": namer.auto_name(obj.pair.alpha), "beta": namer.auto_name(obj.pair.beta)}
    elif isinstance(obj, YDAlgebra):
        d = {"type": "yd_algebra", "module": namer.name_of(obj.module, f"{name}_module"),
             "mult": _strings(F, obj.mu), "unit": _strings(F, obj.unit)}
    elif isinstance(obj, Character):
        d = {"type": "character", "hopf": namer.name_of(obj.parent, "hopf_"),
             "values": _strings(F, obj.values)}
    elif isinstance(obj, GroupLikeElement):
        d = {"type": "grouplike", "hopf": namer.name_of(obj.parent, "hopf_"),
             "vector": _strings(F, obj.vector), "inverse": _strings(F, obj.inverse_vector)}
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")
    d["name"] = name
    return d


def _dependencies(obj):
    if isinstance(obj, (HopfAutomorphism, Character, GroupLikeElement)):
        return [obj.parent]
    if isinstance(obj, YDModule):
        return [obj.hopf, obj.pair.alpha, obj.pair.beta]
    if isinstance(obj, YDAlgebra):
        return [obj.module]
    return []


def _document(defn: DefinitionFile) -> dict:
    namer = _Namer(defn)
    docs, done, emitted = [], set(), set()

    def emit(name, obj):
        if id(obj) in done or name in emitted:
            return
        for dep in _dependencies(obj):
            if isinstance(dep, HopfAutomorphism) and dep.is_identity():
                continue
            emit(namer.name_of(dep, "obj_") if not isinstance(dep, HopfAutomorphism)
                 else namer.auto_name(dep), dep)
        done.add(id(obj))
        emitted.add(name)
        docs.append(_object_doc(namer, name, obj))

    for name, obj in defn.objects.items():
        emit(name, obj)
    F = defn.field
    fdoc = {"kind": "gf", "p": F.p} if F.is_prime_field else {"kind": "rationals"}
    return {"format": FORMAT, "field": fdoc, "objects": docs}


def serialize(defn: DefinitionFile) -> str:
    """Canonical JSON text; ``parse_definition(serialize(d)) == d``."""
    return json.dumps(_document(defn), indent=1, sort_keys=True) + "\n"


def definition_for(H: HopfAlgebra, objects: dict, include_automorphisms: bool = True) -> DefinitionFile:
    """A definition holding ``H`` (named after ``H.name``), its named automorphisms and ``objects``."""
    defn = DefinitionFile(H.field)
    defn.objects["H"] = H
    if include_automorphisms:
        for k, a in H.known_automorphisms.items():
            if not a.is_identity():
                defn.objects[k] = a
    defn.objects.update(objects)
    return defn


# -- reports ------------------------------------------------------------------


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None
    detail: str | None = None
    seconds: float | None = None


@dataclass
class Report:
    command: list
    checks: list = dc_field(default_factory=list)

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, check: Check) -> Check:
        self.checks.append(check)
        return check


def report_document(r: Report, include_timing: bool = False) -> dict:
    doc = {"command": list(r.command), "overall": "pass" if r.overall else "fail",
           "checks": [{"name": c.name, "passed": c.passed, "witness": c.witness, "detail": c.detail}
                      for c in r.checks]}
    if include_timing:
        doc["timing"] = {c.name: c.seconds for c in r.checks}
    return doc


def emit_report(r: Report, format: str = "text", include_timing: bool = False) -> str:
    """Deterministic text or JSON; timings only appear when asked for."""
    if format == "json":
        return json.dumps(report_document(r, include_timing), indent=1, sort_keys=True) + "\n"
    if format != "text":
        raise ValueError(f"unknown report format {format!r}")
    lines = []
    for c in r.checks:
        line = f"{'PASS' if c.passed else 'FAIL'}  {c.name}"
        if c.detail:
            line += f"  {c.detail}"
        if c.witness:
            line += f"  witness {c.witness}"
        if include_timing and c.seconds is not None:
            line += f"  ({c.seconds:.3f}s)"
        lines.append(line)
    lines.append(f"overall: {'pass' if r.overall else 'fail'}")
    return "\n".join(lines) + "\n"
