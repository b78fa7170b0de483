"""JSON documents (schema version 1) for groupoids, double groupoids and hopfoids.

Tokens are strings; tuple tokens and product elements become arrays and
are turned back into tuples on decoding.  Every list is written in a
canonical order so equal structures give byte-identical output.
"""

from __future__ import annotations

import json

from relhopf.doublegpd import DoubleGroupoid
from relhopf.groupoid import Groupoid
from relhopf.hopfoid import RELATIONS, Hopfoid
from relhopf.relcat import PT, Carrier, Relation, product

VERSION = "1"
KINDS = ("groupoid", "double-groupoid", "hopfoid")


class ParseError(ValueError):
    """Malformed document; ``location`` is a path like ``payload.top.mul[3]``."""

    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}")
        self.location = location


class KindError(ValueError):
    pass


def enc(x):
    if isinstance(x, tuple):
        return [enc(v) for v in x]
    if isinstance(x, str):
        return x
    raise TypeError(f"cannot encode token {x!r}")


def dec(x, loc="token"):
    if isinstance(x, list):
        return tuple(dec(v, loc) for v in x)
    if isinstance(x, str):
        return x
    raise ParseError(loc, f"expected a string or array token, got {type(x).__name__}")


def _key(x):
    return json.dumps(enc(x), sort_keys=True)


def _sorted(xs):
    return sorted((enc(x) for x in xs), key=lambda v: json.dumps(v))


def _rows(rows):
    return sorted(([enc(v) for v in row] for row in rows), key=lambda v: json.dumps(v))


# encoding

def encode_groupoid(g: Groupoid) -> dict:
    return {
        "objects": {"name": g.objects.name, "elements": [enc(x) for x in g.objects]},
        "arrows": {"name": g.arrows.name, "elements": [enc(x) for x in g.arrows]},
        "src": _rows(g.src.items()),
        "tgt": _rows(g.tgt.items()),
        "unit": _rows(g.unit.items()),
        "inv": _rows(g.inv.items()),
        "mul": _rows((a, b, c) for (a, b), c in g.mul.items()),
    }


def encode_double(d: DoubleGroupoid) -> dict:
    return {
        "squares": {"name": d.squares.name, "elements": [enc(x) for x in d.squares]},
        "side_v": encode_groupoid(d.side_v),
        "side_h": encode_groupoid(d.side_h),
        "top": encode_groupoid(d.top),
        "left": encode_groupoid(d.left),
    }


def encode_hopfoid(h: Hopfoid) -> dict:
    return {
        "carrier": {"name": h.carrier.name, "elements": [enc(x) for x in h.carrier]},
        "base": _sorted(h.base),
        "relations": {name: _rows(getattr(h, name).pairs) for name in RELATIONS},
    }


def encode(obj) -> dict:
    if isinstance(obj, Groupoid):
        kind, payload = "groupoid", encode_groupoid(obj)
    elif isinstance(obj, DoubleGroupoid):
        kind, payload = "double-groupoid", encode_double(obj)
    elif isinstance(obj, Hopfoid):
        kind, payload = "hopfoid", encode_hopfoid(obj)
    else:
        raise TypeError(f"nothing to encode for {type(obj).__name__}")
    return {"kind": kind, "version": VERSION, "payload": payload}


def dumps(obj) -> str:
    return json.dumps(obj if isinstance(obj, dict) else encode(obj), sort_keys=True, indent=1) + "\n"


# decoding

def _field(d, name, loc, typ=None):
    if not isinstance(d, dict):
        raise ParseError(loc, "expected an object")
    if name not in d:
        raise ParseError(f"{loc}.{name}", "missing")
    v = d[name]
    if typ is not None and not isinstance(v, typ):
        raise ParseError(f"{loc}.{name}", f"expected {typ.__name__}")
    return v


def _carrier(d, loc) -> Carrier:
    name = _field(d, "name", loc, str)
    els = _field(d, "elements", loc, list)
    toks = [dec(x, f"{loc}.elements[{k}]") for k, x in enumerate(els)]
    if len(set(toks)) != len(toks):
        raise ParseError(f"{loc}.elements", "repeated element")
    return Carrier(name, toks)


def _table(rows, width, loc, domain=None):
    if not isinstance(rows, list):
        raise ParseError(loc, "expected an array of rows")
    out = {}
    for k, row in enumerate(rows):
        here = f"{loc}[{k}]"
        if not isinstance(row, list) or len(row) != width:
            raise ParseError(here, f"expected a row of {width} tokens")
        vals = [dec(v, here) for v in row]
        key = tuple(vals[:-1]) if width > 2 else vals[0]
        if key in out:
            raise ParseError(here, "duplicate entry")
        if domain is not None and (vals[0] not in domain):
            raise ParseError(here, f"{vals[0]!r} is not in the domain")
        out[key] = vals[-1]
    return out


def decode_groupoid(p, loc="payload") -> Groupoid:
    objs = _carrier(_field(p, "objects", loc), f"{loc}.objects")
    arrows = _carrier(_field(p, "arrows", loc), f"{loc}.arrows")
    return Groupoid(
        objects=objs,
        arrows=arrows,
        src=_table(_field(p, "src", loc), 2, f"{loc}.src", arrows),
        tgt=_table(_field(p, "tgt", loc), 2, f"{loc}.tgt", arrows),
        unit=_table(_field(p, "unit", loc), 2, f"{loc}.unit", objs),
        inv=_table(_field(p, "inv", loc), 2, f"{loc}.inv", arrows),
        mul=_table(_field(p, "mul", loc), 3, f"{loc}.mul"),
    )


def decode_double(p, loc="payload") -> DoubleGroupoid:
    sq = _carrier(_field(p, "squares", loc), f"{loc}.squares")
    parts = {k: decode_groupoid(_field(p, k, loc), f"{loc}.{k}") for k in ("side_v", "side_h", "top", "left")}
    return DoubleGroupoid(sq, **parts)


def _relation(rows, dom, cod, loc) -> Relation:
    if not isinstance(rows, list):
        raise ParseError(loc, "expected an array of pairs")
    pairs = []
    for k, row in enumerate(rows):
        here = f"{loc}[{k}]"
        if not isinstance(row, list) or len(row) != 2:
            raise ParseError(here, "expected a [from, to] pair")
        x, y = dec(row[0], here), dec(row[1], here)
        if x not in dom:
            raise ParseError(here, f"{x!r} is not in {dom.name}")
        if y not in cod:
            raise ParseError(here, f"{y!r} is not in {cod.name}")
        pairs.append((x, y))
    return Relation(dom, cod, pairs, check=False)


def decode_hopfoid(p, loc="payload") -> Hopfoid:
    D = _carrier(_field(p, "carrier", loc), f"{loc}.carrier")
    base = [dec(x, f"{loc}.base[{k}]") for k, x in enumerate(_field(p, "base", loc, list))]
    for k, c in enumerate(base):
        if c not in D:
            raise ParseError(f"{loc}.base[{k}]", f"{c!r} is not in the carrier")
    C = D.subset("C", base)
    DD = product(D, D)
    shapes = {"delta": (D, DD), "epsilon": (D, PT), "star": (D, D), "t": (D, C), "s": (D, C),
              "e": (C, D), "m": (DD, D), "i": (D, D)}
    rels = _field(p, "relations", loc, dict)
    out = {}
    for name in RELATIONS:
        dom, cod = shapes[name]
        out[name] = _relation(_field(rels, name, f"{loc}.relations"), dom, cod, f"{loc}.relations.{name}")
    return Hopfoid(carrier=D, base=C, **out)


_DECODERS = {"groupoid": decode_groupoid, "double-groupoid": decode_double, "hopfoid": decode_hopfoid}


def decode(doc, expect: str | None = None):
    kind = _field(doc, "kind", "document", str)
    version = _field(doc, "version", "document", str)
    if version != VERSION:
        raise ParseError("document.version", f"unsupported version {version!r}")
    if kind not in _DECODERS:
        raise ParseError("document.kind", f"unknown kind {kind!r}")
    if expect is not None and kind != expect:
        raise KindError(f"expected a {expect} document, got {kind}")
    return _DECODERS[kind](_field(doc, "payload", "document", dict))


def loads(text: str, expect: str | None = None):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}", exc.msg) from exc
    return decode(doc, expect)
