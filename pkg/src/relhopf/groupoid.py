"""Finite groupoids and their description as strongly positive *-monoids.

Multiplication follows function-composition order: ``mul[g, h]`` is defined
iff ``src[g] == tgt[h]``, and then ``src(gh) = src(h)``, ``tgt(gh) = tgt(g)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from relhopf.relcat import (
    PT,
    Carrier,
    Relation,
    chain,
    classify,
    compose,
    graph,
    identity,
    points,
    product,
    subset_as_relation,
    swap,
    tensor,
)
from relhopf.report import CheckReport


class ValidationError(Exception):
    def __init__(self, message, report: CheckReport | None = None):
        super().__init__(message)
        self.report = report


class ExtractionError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class RestrictionError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


@dataclass(frozen=True, eq=True)
class Groupoid:
    objects: Carrier
    arrows: Carrier
    src: dict
    tgt: dict
    unit: dict
    inv: dict
    mul: dict

    def composable(self):
        by_tgt = {}
        for h in self.arrows:
            by_tgt.setdefault(self.tgt[h], []).append(h)
        for g in self.arrows:
            for h in by_tgt.get(self.src[g], ()):
                yield g, h

    def unit_arrows(self) -> frozenset:
        return frozenset(self.unit.values())

    def embedded(self) -> Groupoid:
        """The same groupoid with each object replaced by its unit arrow."""
        u = self.unit
        objs = Carrier(self.objects.name, [u[x] for x in self.objects])
        return Groupoid(
            objects=objs,
            arrows=self.arrows,
            src={g: u[x] for g, x in self.src.items()},
            tgt={g: u[x] for g, x in self.tgt.items()},
            unit={a: a for a in objs},
            inv=self.inv,
            mul=self.mul,
        )

    def relabel_objects(self, mapping: dict, name: str | None = None) -> Groupoid:
        objs = Carrier(name or self.objects.name, [mapping[x] for x in self.objects])
        return Groupoid(
            objects=objs,
            arrows=self.arrows,
            src={g: mapping[x] for g, x in self.src.items()},
            tgt={g: mapping[x] for g, x in self.tgt.items()},
            unit={mapping[x]: a for x, a in self.unit.items()},
            inv=self.inv,
            mul=self.mul,
        )


def validate_groupoid(g: Groupoid, title: str = "groupoid") -> CheckReport:
    rep = CheckReport(title)
    arrows, objects = g.arrows, g.objects

    bad = [a for a in arrows if g.src.get(a) not in objects or g.tgt.get(a) not in objects
           or g.inv.get(a) not in arrows]
    bad += [x for x in objects if g.unit.get(x) not in arrows]
    rep.add("maps total", not bad, bad[:1])
    if bad:
        return rep

    comp = set(g.composable())
    wrong_dom = [k for k in g.mul if k not in comp]
    missing = [k for k in comp if k not in g.mul or g.mul[k] not in arrows]
    rep.add("product defined exactly on composable pairs", not wrong_dom and not missing,
            (wrong_dom + missing)[:1])
    if wrong_dom or missing:
        return rep

    w = [x for x in objects if g.src[g.unit[x]] != x or g.tgt[g.unit[x]] != x]
    rep.add("unit endpoints", not w, w[:1])
    w = [(gh, g.mul[gh]) for gh in comp
         if g.src[g.mul[gh]] != g.src[gh[1]] or g.tgt[g.mul[gh]] != g.tgt[gh[0]]]
    rep.add("product endpoints", not w, w[:1])
    w = [a for a in arrows if g.mul.get((g.unit[g.tgt[a]], a)) != a]
    rep.add("left unit", not w, w[:1])
    w = [a for a in arrows if g.mul.get((a, g.unit[g.src[a]])) != a]
    rep.add("right unit", not w, w[:1])
    w = [a for a in arrows
         if g.src[g.inv[a]] != g.tgt[a] or g.tgt[g.inv[a]] != g.src[a]
         or g.mul.get((a, g.inv[a])) != g.unit[g.tgt[a]]
         or g.mul.get((g.inv[a], a)) != g.unit[g.src[a]]]
    rep.add("inverse", not w, w[:1])

    w = None
    by_tgt = {}
    for h in arrows:
        by_tgt.setdefault(g.tgt[h], []).append(h)
    for a, b in comp:
        for c in by_tgt.get(g.src[b], ()):
            # .get: with broken endpoints the two bracketings may not even be defined
            lhs, rhs = g.mul.get((g.mul[a, b], c)), g.mul.get((a, g.mul[b, c]))
            if lhs is None or lhs != rhs:
                w = (a, b, c)
                break
        if w:
            break
    rep.add("associativity", w is None, w)
    return rep


def require_valid(g: Groupoid, title="groupoid"):
    rep = validate_groupoid(g, title)
    if not rep.ok:
        raise ValidationError(f"invalid {title}: {rep.failures()[0].name}", rep)
    return rep


@dataclass(frozen=True)
class StarMonoid:
    carrier: Carrier
    m: Relation
    e: Relation
    star: Relation


def to_star_monoid(g: Groupoid) -> StarMonoid:
    require_valid(g)
    s = g.arrows
    m = Relation(product(s, s), s, (((a, b), c) for (a, b), c in g.mul.items()), check=False)
    e = subset_as_relation(s, g.unit.values())
    star = graph(s, s, g.inv)
    return StarMonoid(s, m, e, star)


def diagonal(c: Carrier) -> Relation:
    """``pt -> c x c`` given by the diagonal."""
    return Relation(PT, product(c, c), (((), (x, x)) for x in c), check=False)


def check_star_monoid(sm: StarMonoid, title: str = "star monoid") -> CheckReport:
    rep = CheckReport(title)
    s, m, e, star = sm.carrier, sm.m, sm.e, sm.star
    ids = identity(s)
    rep.equal("associativity",
              compose(tensor(m, ids), m), compose(tensor(ids, m), m), tag="monoid")
    rep.equal("left unit", compose(tensor(e, ids), m), ids, tag="monoid")
    rep.equal("right unit", compose(tensor(ids, e), m), ids, tag="monoid")

    kind = classify(star)
    invol = all(kind) and compose(star, star) == ids
    compat = compose(m, star) == chain(swap(s, s), tensor(star, star), m)
    witness = None
    if not invol:
        witness = {"star": "not an involutive bijection"}
    elif not compat:
        from relhopf.relcat import difference_witness
        witness = difference_witness(compose(m, star), chain(swap(s, s), tensor(star, star), m))
    rep.add("star compatibility", invol and compat, witness, tag="*-structure")

    rep.equal("strong positivity",
              chain(diagonal(s), tensor(ids, star), m), e, tag="*-structure")
    return rep


def from_star_monoid(sm: StarMonoid) -> Groupoid:
    s = sm.carrier
    units = points(sm.e)
    table = {}
    for (a, b), c in sm.m.pairs:
        if (a, b) in table and table[a, b] != c:
            raise ExtractionError(f"product is multivalued at {(a, b)!r}", (a, b))
        table[a, b] = c

    tgt, src = {}, {}
    for a in s:
        left = [u for u in units if table.get((u, a)) == a]
        right = [u for u in units if table.get((a, u)) == a]
        if len(left) != 1:
            raise ExtractionError(f"no unique left unit for {a!r} (found {len(left)})", a)
        if len(right) != 1:
            raise ExtractionError(f"no unique right unit for {a!r} (found {len(right)})", a)
        tgt[a], src[a] = left[0], right[0]

    for (a, b) in table:
        if src[a] != tgt[b]:
            raise ExtractionError(f"product defined on non-composable pair {(a, b)!r}", (a, b))

    try:
        inv = sm.star.as_function()
    except Exception as exc:
        raise ExtractionError(f"star is not a map: {exc}") from exc
    if set(inv) != set(s):
        raise ExtractionError("star is not total")

    objects = Carrier(s.name + ".units", [x for x in s if x in units])
    g = Groupoid(objects, s, src, tgt, {u: u for u in objects}, inv, table)
    rep = validate_groupoid(g)
    if not rep.ok:
        raise ExtractionError(f"extracted structure fails {rep.failures()[0].name}", rep.failures()[0].witness)
    return g


def restrict_groupoid(g: Groupoid, keep, name: str | None = None) -> Groupoid:
    """Restrict to a sub-groupoid; objects are returned as unit arrows."""
    keep = set(keep)
    for a in keep:
        if a not in g.arrows:
            raise RestrictionError(f"{a!r} is not an arrow", a)
        for b in (g.inv[a], g.unit[g.src[a]], g.unit[g.tgt[a]]):
            if b not in keep:
                raise RestrictionError(f"not closed: {a!r} needs {b!r}", (a, b))
    mul = {}
    for (a, b), c in g.mul.items():
        if a in keep and b in keep:
            if c not in keep:
                raise RestrictionError(f"not closed under product at {(a, b)!r}", (a, b))
            mul[a, b] = c
    arrows = Carrier(name or g.arrows.name, [a for a in g.arrows if a in keep])
    unit_of = {a: g.unit[g.src[a]] for a in arrows}
    objs = Carrier((name or g.arrows.name) + ".units",
                   [a for a in arrows if a in set(g.unit[x] for x in g.objects)])
    return Groupoid(
        objects=objs,
        arrows=arrows,
        src=unit_of,
        tgt={a: g.unit[g.tgt[a]] for a in arrows},
        unit={u: u for u in objs},
        inv={a: g.inv[a] for a in arrows},
        mul=mul,
    )
