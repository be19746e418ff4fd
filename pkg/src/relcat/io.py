"""Canonical JSON interchange.

Every file is ``{"format_version": 1, "kind": ..., "payload": ...}``.
Ids are strings, integers or nested arrays (tuples).  Maps keyed by ids
(identities, functor components, fibers) are JSON objects when every key is
a string and ``[[key, value], ...]`` lists otherwise; both forms are read.
Output uses sorted keys and canonical id order, so ``serialize(parse(t)) == t``
for any canonical text ``t``.
"""

from __future__ import annotations

import json
from collections.abc import Mapping
from dataclasses import dataclass
from typing import Any

from .category import CategoryError, FinCat, FinFunctor, Id, sort_key, validate_cat, validate_functor
from .grothendieck import GrothendieckInput, validate_grothendieck_input
from .relative import KRelStructure, ThreeArrowCalculus, validate_krel

FORMAT_VERSION = 1
KINDS = ("category", "krel", "functor", "diagram", "zigzag", "calculus", "report")


class FormatError(CategoryError):
    """Malformed document; the message starts with the JSON path or line/column."""


@dataclass(frozen=True)
class Document:
    kind: str
    payload: Any
    format_version: int = FORMAT_VERSION


# -- ids -------------------------------------------------------------------------------


def encode_id(x: Id) -> Any:
    if isinstance(x, tuple):
        return [encode_id(y) for y in x]
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"id {x!r} is not serializable")
    return x


def decode_id(x: Any, where: str) -> Id:
    if isinstance(x, list):
        return tuple(decode_id(y, f"{where}[{i}]") for i, y in enumerate(x))
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"{where}: {x!r} is not an id")
    return x


def _sorted_ids(xs) -> list:
    return sorted(xs, key=sort_key)


def _encode_map(m: Mapping[Id, Any], enc=encode_id) -> Any:
    keys = _sorted_ids(m)
    if all(isinstance(k, str) for k in keys):
        return {k: enc(m[k]) for k in keys}
    return [[encode_id(k), enc(m[k])] for k in keys]


def _decode_map(x: Any, where: str, dec=decode_id) -> dict:
    if isinstance(x, dict):
        return {k: dec(v, f"{where}.{k}") for k, v in x.items()}
    if isinstance(x, list):
        out = {}
        for i, pair in enumerate(x):
            if not (isinstance(pair, list) and len(pair) == 2):
                raise FormatError(f"{where}[{i}]: expected [key, value]")
            out[decode_id(pair[0], f"{where}[{i}][0]")] = dec(pair[1], f"{where}[{i}][1]")
        return out
    raise FormatError(f"{where}: expected an object or a list of pairs")


def _fields(x: Any, where: str, required: tuple[str, ...], optional: tuple[str, ...] = ()) -> dict:
    if not isinstance(x, dict):
        raise FormatError(f"{where}: expected an object")
    unknown = sorted(set(x) - set(required) - set(optional))
    if unknown:
        raise FormatError(f"{where}: unknown field {unknown[0]!r}")
    missing = [k for k in required if k not in x]
    if missing:
        raise FormatError(f"{where}: missing field {missing[0]!r}")
    return x


def _list(x: Any, where: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{where}: expected a list")
    return x


# -- categories ----------------------------------------------------------------------------


def category_to_json(c: FinCat) -> dict:
    comp = []
    for m in _sorted_ids(c.morphisms):
        for g in _sorted_ids(c.out(c.tgt(m))):
            comp.append([encode_id(g), encode_id(m), encode_id(c.compose(g, m))])
    return {
        "name": c.name,
        "objects": [encode_id(x) for x in _sorted_ids(c.objects)],
        "morphisms": [
            {"id": encode_id(m), "src": encode_id(c.src(m)), "tgt": encode_id(c.tgt(m))}
            for m in _sorted_ids(c.morphisms)
        ],
        "identities": _encode_map(c.identity),
        "compose": comp,
    }


def category_from_json(x: Any, where: str = "$", validate: bool = True) -> FinCat:
    x = _fields(x, where, ("objects", "morphisms", "identities", "compose"), ("name",))
    objs = [decode_id(o, f"{where}.objects[{i}]") for i, o in enumerate(_list(x["objects"], f"{where}.objects"))]
    known = set(objs)
    if len(known) != len(objs):
        raise FormatError(f"{where}.objects: duplicate object id")
    mors: dict[Id, tuple[Id, Id]] = {}
    for i, m in enumerate(_list(x["morphisms"], f"{where}.morphisms")):
        p = f"{where}.morphisms[{i}]"
        m = _fields(m, p, ("id", "src", "tgt"))
        mid = decode_id(m["id"], f"{p}.id")
        ends = decode_id(m["src"], f"{p}.src"), decode_id(m["tgt"], f"{p}.tgt")
        for e in ends:
            if e not in known:
                raise FormatError(f"{p}: morphism {mid!r} references unknown object {e!r}")
        if mid in mors:
            raise FormatError(f"{p}: duplicate morphism id {mid!r}")
        mors[mid] = ends
    ident = _decode_map(x["identities"], f"{where}.identities")
    for o, m in ident.items():
        if o not in known:
            raise FormatError(f"{where}.identities: unknown object {o!r}")
        if m not in mors:
            raise FormatError(f"{where}.identities: unknown morphism {m!r}")
    table = {}
    for i, row in enumerate(_list(x["compose"], f"{where}.compose")):
        p = f"{where}.compose[{i}]"
        if not (isinstance(row, list) and len(row) == 3):
            raise FormatError(f"{p}: expected [g, f, g∘f]")
        g, f, h = (decode_id(v, f"{p}[{j}]") for j, v in enumerate(row))
        for m in (g, f, h):
            if m not in mors:
                raise FormatError(f"{p}: unknown morphism {m!r}")
        table[(g, f)] = h
    c = FinCat(objs, mors, ident, table, name=x.get("name", ""))
    if validate:
        bad = validate_cat(c)
        if bad:
            raise FormatError(f"{where}: not a category: " + "; ".join(map(str, bad[:3])))
    return c


# -- structures, functors, diagrams ----------------------------------------------------


def _mask(m: frozenset) -> list:
    return [encode_id(x) for x in _sorted_ids(m)]


def krel_to_json(s: KRelStructure) -> dict:
    return {
        "category": category_to_json(s.ambient),
        "k": s.k,
        "v": [_mask(v) for v in s.v_masks],
        "w": _mask(s.w_mask),
        "name": s.name,
    }


def krel_from_json(x: Any, where: str = "$", validate: bool = True) -> KRelStructure:
    x = _fields(x, where, ("category", "k", "v", "w"), ("name",))
    c = category_from_json(x["category"], f"{where}.category", validate)

    def mask(lst: Any, p: str) -> frozenset:
        out = frozenset(decode_id(m, f"{p}[{i}]") for i, m in enumerate(_list(lst, p)))
        for m in out:
            if m not in c.morphisms:
                raise FormatError(f"{p}: unknown morphism {m!r}")
        return out

    vs = tuple(mask(v, f"{where}.v[{i}]") for i, v in enumerate(_list(x["v"], f"{where}.v")))
    if x["k"] != len(vs):
        raise FormatError(f"{where}.k: k = {x['k']} but {len(vs)} masks given")
    s = KRelStructure(c, vs, mask(x["w"], f"{where}.w"), name=x.get("name", c.name))
    for i, v in enumerate(vs, 1):
        if not s.w_mask <= v:
            extra = _sorted_ids(s.w_mask - v)[0]
            raise FormatError(f"{where}.w: containment w ⊆ v{i} fails at {extra!r}")
    if validate:
        rep = validate_krel(s)
        bad = [r for r in rep.results if r.status != "pass"]
        if bad:
            raise FormatError(f"{where}: {bad[0].axiom} {bad[0].status}: {bad[0].detail or bad[0].witness!r}")
    return s


def _components_to_json(F: FinFunctor) -> dict:
    return {"on_objects": _encode_map(F.on_objects), "on_morphisms": _encode_map(F.on_morphisms)}


def functor_to_json(F: FinFunctor) -> dict:
    return {
        "source": category_to_json(F.source),
        "target": category_to_json(F.target),
        "name": F.name,
        **_components_to_json(F),
    }


def _functor_between(x: Any, where: str, src: FinCat, tgt: FinCat, name: str = "", validate: bool = True) -> FinFunctor:
    F = FinFunctor(
        src,
        tgt,
        _decode_map(x["on_objects"], f"{where}.on_objects"),
        _decode_map(x["on_morphisms"], f"{where}.on_morphisms"),
        name=name,
    )
    for o in src.objects:
        if o not in F.on_objects:
            raise FormatError(f"{where}.on_objects: missing object {o!r}")
    for m in src.morphisms:
        if m not in F.on_morphisms:
            raise FormatError(f"{where}.on_morphisms: missing morphism {m!r}")
    if validate:
        bad = validate_functor(F)
        if bad:
            raise FormatError(f"{where}: not a functor: " + "; ".join(map(str, bad[:3])))
    return F


def functor_from_json(x: Any, where: str = "$", validate: bool = True, *, target: FinCat | None = None) -> FinFunctor:
    x = _fields(x, where, ("source", "target", "on_objects", "on_morphisms"), ("name",))
    src = category_from_json(x["source"], f"{where}.source", validate)
    tgt = category_from_json(x["target"], f"{where}.target", validate)
    if target is not None:
        if not tgt.same_as(target):
            raise FormatError(f"{where}.target: differs from the shared target")
        tgt = target
    return _functor_between(x, where, src, tgt, x.get("name", ""), validate)


def diagram_to_json(inp: GrothendieckInput) -> dict:
    return {
        "base": category_to_json(inp.base),
        "variance": inp.variance,
        "name": inp.name,
        "fibers": _encode_map(inp.fibers, category_to_json),
        "action": _encode_map(inp.action, _components_to_json),
    }


def diagram_from_json(x: Any, where: str = "$", validate: bool = True) -> GrothendieckInput:
    x = _fields(x, where, ("base", "variance", "fibers", "action"), ("name",))
    base = category_from_json(x["base"], f"{where}.base", validate)
    if x["variance"] not in ("co", "contra"):
        raise FormatError(f"{where}.variance: expected 'co' or 'contra'")
    fibers = _decode_map(x["fibers"], f"{where}.fibers", lambda v, p: category_from_json(v, p, validate))
    for b in base.objects:
        if b not in fibers:
            raise FormatError(f"{where}.fibers: missing fiber over {b!r}")
    raw = _decode_map(x["action"], f"{where}.action", lambda v, p: (v, p))
    inp = GrothendieckInput(base, fibers, {}, x["variance"], x.get("name", ""))
    for d in base.morphisms:
        if d not in raw:
            raise FormatError(f"{where}.action: missing action of {d!r}")
        v, p = raw[d]
        _fields(v, p, ("on_objects", "on_morphisms"))
        a, b = inp.ends(d)
        inp.action[d] = _functor_between(v, p, fibers[a], fibers[b], validate=validate)
    if validate:
        bad = validate_grothendieck_input(inp)
        if bad:
            raise FormatError(f"{where}: " + "; ".join(map(str, bad[:3])))
    return inp


@dataclass(eq=False)
class Zigzag:
    """``X -f-> Z <-g- Y`` with optional structures (``None`` means the 0-relative one)."""

    f: FinFunctor
    g: FinFunctor
    x: KRelStructure | None = None
    y: KRelStructure | None = None
    z: KRelStructure | None = None
    name: str = ""


def _masks_json(s: KRelStructure) -> dict:
    return {"k": s.k, "v": [_mask(v) for v in s.v_masks], "w": _mask(s.w_mask)}


def zigzag_to_json(zz: Zigzag) -> dict:
    out: dict[str, Any] = {"f": functor_to_json(zz.f), "g": functor_to_json(zz.g), "name": zz.name}
    for key in ("x", "y", "z"):
        s = getattr(zz, key)
        if s is not None:
            out[key] = _masks_json(s)
    return out


def zigzag_from_json(x: Any, where: str = "$", validate: bool = True) -> Zigzag:
    x = _fields(x, where, ("f", "g"), ("x", "y", "z", "name"))
    f = functor_from_json(x["f"], f"{where}.f", validate)
    g = functor_from_json(x["g"], f"{where}.g", validate, target=f.target)
    zz = Zigzag(f, g, name=x.get("name", ""))
    for key, c in (("x", f.source), ("y", g.source), ("z", f.target)):
        if key in x:
            p = f"{where}.{key}"
            m = _fields(x[key], p, ("k", "v", "w"))
            body = {"category": category_to_json(c), "k": m["k"], "v": m["v"], "w": m["w"], "name": c.name}
            s = krel_from_json(body, p, validate)
            setattr(zz, key, KRelStructure(c, s.v_masks, s.w_mask, name=c.name))
    present = [getattr(zz, k) for k in ("x", "y", "z") if getattr(zz, k) is not None]
    if present and len(present) != 3:
        raise FormatError(f"{where}: give structures for all of x, y, z or none")
    if present:
        if len({s.k for s in present}) != 1:
            raise FormatError(f"{where}: structures have different k")
        for F, s, key in ((f, zz.x, "f"), (g, zz.y, "g")):
            if not s.is_relative_functor(F, zz.z):
                raise FormatError(f"{where}.{key}: not a relative functor")
    return zz


def calculus_to_json(cal: ThreeArrowCalculus) -> dict:
    return {
        "u": _mask(cal.u_mask),
        "v": _mask(cal.v_mask),
        "factor": _encode_map(cal.factorization),
        "witnesses": [
            [encode_id(sq), encode_id(cal.witnesses[sq])] for sq in _sorted_ids(cal.witnesses)
        ],
    }


def calculus_from_json(x: Any, where: str = "$") -> ThreeArrowCalculus:
    x = _fields(x, where, ("u", "v", "factor"), ("witnesses",))
    u = frozenset(decode_id(m, f"{where}.u[{i}]") for i, m in enumerate(_list(x["u"], f"{where}.u")))
    v = frozenset(decode_id(m, f"{where}.v[{i}]") for i, m in enumerate(_list(x["v"], f"{where}.v")))
    fac = _decode_map(x["factor"], f"{where}.factor")
    for k, val in fac.items():
        if not (isinstance(val, tuple) and len(val) == 2):
            raise FormatError(f"{where}.factor.{k}: expected [u, v]")
    wit = {}
    for i, pair in enumerate(_list(x.get("witnesses", []), f"{where}.witnesses")):
        if not (isinstance(pair, list) and len(pair) == 2):
            raise FormatError(f"{where}.witnesses[{i}]: expected [square, map]")
        wit[decode_id(pair[0], f"{where}.witnesses[{i}][0]")] = decode_id(pair[1], f"{where}.witnesses[{i}][1]")
    return ThreeArrowCalculus(u, v, fac, wit)


# -- reports -------------------------------------------------------------------------


def report_from_json(x: Any, where: str = "$") -> dict:
    x = _fields(x, where, ("overall", "cases", "env"), ("property", "details"))
    for i, c in enumerate(_list(x["cases"], f"{where}.cases")):
        _fields(c, f"{where}.cases[{i}]", ("id", "verdict"), ("status", "witness"))
    _fields(x["env"], f"{where}.env", ("bound", "caps", "family"), ("version", "n", "window"))
    return x


# -- documents --------------------------------------------------------------------------

_ENCODERS = {
    "category": category_to_json,
    "krel": krel_to_json,
    "functor": functor_to_json,
    "diagram": diagram_to_json,
    "zigzag": zigzag_to_json,
    "calculus": calculus_to_json,
}

_DECODERS = {
    "category": category_from_json,
    "krel": krel_from_json,
    "functor": functor_from_json,
    "diagram": diagram_from_json,
    "zigzag": zigzag_from_json,
    "calculus": lambda x, where, validate=True: calculus_from_json(x, where),
    "report": lambda x, where, validate=True: report_from_json(x, where),
}


def to_document(obj: Any, kind: str | None = None) -> Document:
    if kind is None:
        kind = {
            FinCat: "category",
            KRelStructure: "krel",
            FinFunctor: "functor",
            GrothendieckInput: "diagram",
            Zigzag: "zigzag",
            ThreeArrowCalculus: "calculus",
        }.get(type(obj))
        if kind is None:
            raise TypeError(f"cannot serialize {type(obj).__name__}")
    payload = obj if kind == "report" else _ENCODERS[kind](obj)
    return Document(kind, payload)


def dumps(doc: Document) -> str:
    body = {"format_version": doc.format_version, "kind": doc.kind, "payload": doc.payload}
    return json.dumps(body, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse(text: str) -> Document:
    """Parse and schema-check a document (payload stays plain JSON)."""
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno} column {e.colno}: {e.msg}") from None
    raw = _fields(raw, "$", ("format_version", "kind", "payload"))
    if raw["format_version"] != FORMAT_VERSION:
        raise FormatError(f"$.format_version: unsupported version {raw['format_version']!r}")
    if raw["kind"] not in KINDS:
        raise FormatError(f"$.kind: unknown kind {raw['kind']!r}")
    return Document(raw["kind"], raw["payload"], raw["format_version"])


def serialize(obj: Any, kind: str | None = None) -> str:
    return dumps(obj if isinstance(obj, Document) else to_document(obj, kind))


def load(text: str, validate: bool = True) -> tuple[str, Any]:
    """Parse text into ``(kind, domain object)``; reports stay plain dicts."""
    doc = parse(text)
    return doc.kind, _DECODERS[doc.kind](doc.payload, "$.payload", validate)


def load_file(path: str, validate: bool = True) -> tuple[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return load(fh.read(), validate)


def save_file(path: str, obj: Any, kind: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize(obj, kind))
