"""Hopfoids: the relational counterpart of a finite double groupoid.

``build_hopfoid`` turns a double groupoid ``D`` with core ``C`` into the
relations

    delta : D -> D x D    transpose of the vertical product
    epsilon : D -> pt     the vertical units 1~H(V)
    star : D -> D         vertical inverse i~H
    t, s : D -> C         target and source reductions
    e : C -> D            unit coreduction
    m : D x D -> D        horizontal product
    i : D -> D            antipode i~V o i~H

and ``build_double`` recovers the double groupoid from them.
"""

from __future__ import annotations

from dataclasses import dataclass, fields

from relhopf.doublegpd import (
    DoubleGroupoid,
    core_set,
    embed_units,
    reduction_relation,
    require_valid_double,
    validate_double,
)
from relhopf.groupoid import (
    ExtractionError,
    RestrictionError,
    StarMonoid,
    ValidationError,
    check_star_monoid,
    from_star_monoid,
    restrict_groupoid,
)
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
    transpose,
)
from relhopf.report import CheckReport

RELATIONS = ("delta", "epsilon", "star", "t", "s", "e", "m", "i")


class ReverseError(Exception):
    def __init__(self, stage: str, message: str, witness=None):
        super().__init__(f"[{stage}] {message}")
        self.stage = stage
        self.witness = witness


@dataclass(frozen=True)
class Hopfoid:
    carrier: Carrier
    base: Carrier
    delta: Relation
    epsilon: Relation
    star: Relation
    t: Relation
    s: Relation
    e: Relation
    m: Relation
    i: Relation

    def replace(self, **changes) -> Hopfoid:
        vals = {f.name: getattr(self, f.name) for f in fields(self)}
        vals.update(changes)
        return Hopfoid(**vals)


def build_hopfoid(d: DoubleGroupoid) -> Hopfoid:
    require_valid_double(d)
    D = d.squares
    V, H = d.side_v, d.side_h
    core = core_set(d)
    C = Carrier("C", core)

    e_pairs = []
    for c in core:
        m = V.src[d.sH(c)]
        for lam in H.arrows:
            if H.tgt[lam] == m:
                e_pairs.append((c, d.vert(c, d.unit_v(lam))))

    DD = product(D, D)
    return Hopfoid(
        carrier=D,
        base=C,
        delta=Relation(D, DD, ((c, ab) for ab, c in d.top.mul.items()), check=False),
        epsilon=Relation(D, PT, ((d.unit_h(v), ()) for v in V.arrows), check=False),
        star=graph(D, D, d.top.inv),
        t=reduction_relation(d, "sV"),
        s=reduction_relation(d, "tV"),
        e=Relation(C, D, e_pairs),
        m=Relation(DD, D, d.left.mul.items(), check=False),
        i=graph(D, D, {a: d.antipode(a) for a in D}),
    )


def comonoid_as_monoid(h: Hopfoid) -> StarMonoid:
    """The coproduct, counit and star, with arrows reversed."""
    return StarMonoid(h.carrier, transpose(h.delta), transpose(h.epsilon), h.star)


def check_hopfoid(h: Hopfoid) -> CheckReport:
    rep = CheckReport("hopfoid")
    D, C = h.carrier, h.base
    idD, idC = identity(D), identity(C)

    rep.extend(check_star_monoid(comonoid_as_monoid(h), "comonoid"), prefix="comonoid: ")
    outside = [c for c in C if c not in D]
    rep.add("base is a subset of the carrier", not outside, outside[:1], tag="data")
    rep.equal("t is a reduction", compose(transpose(h.t), h.t), idC, tag="data")
    rep.equal("s is a reduction", compose(transpose(h.s), h.s), idC, tag="data")
    rep.equal("e is a coreduction", compose(h.e, transpose(h.e)), idC, tag="data")
    rep.add("i is a bijection", all(classify(h.i)), _bijection_witness(h.i), tag="data")
    rep.equal("i preserves the counit", compose(h.i, h.epsilon), h.epsilon, tag="data")

    rep.equal("(i) t o e = id_C", compose(h.e, h.t), idC, tag="(i)")
    rep.equal("(i) s o e = id_C", compose(h.e, h.s), idC, tag="(i)")
    rep.equal("(ii) t o i = s", compose(h.i, h.t), h.s, tag="(ii)")
    rep.equal("(ii) s o i = t", compose(h.i, h.s), h.t, tag="(ii)")
    rep.equal("(iii) associativity",
              compose(tensor(h.m, idD), h.m), compose(tensor(idD, h.m), h.m), tag="(iii)")
    rep.equal("(iv) i^2 = id", compose(h.i, h.i), idD, tag="(iv)")
    rep.equal("(iv) i commutes with star", compose(h.i, h.star), compose(h.star, h.i), tag="(iv)")
    rep.equal("(iv) antipode reverses products",
              compose(h.m, h.i), chain(swap(D, D), tensor(h.i, h.i), h.m), tag="(iv)")
    rep.equal("(v) product/coproduct compatibility",
              compose(h.m, h.delta),
              chain(tensor(h.delta, h.delta), tensor(idD, swap(D, D), idD), tensor(h.m, h.m)),
              tag="(v)")
    ie = compose(h.e, h.i)
    rep.equal("(vi) left unit",
              chain(h.delta, tensor(h.t, idD), tensor(h.e, idD), h.m), idD, tag="(vi)")
    rep.equal("(vi) right unit",
              chain(h.delta, tensor(idD, h.s), tensor(idD, ie), h.m), idD, tag="(vi)")
    rep.equal("(vii) left inverse",
              chain(h.delta, tensor(idD, h.i), h.m), compose(h.t, h.e), tag="(vii)")
    rep.equal("(vii) right inverse",
              chain(h.delta, tensor(h.i, idD), h.m), compose(h.s, ie), tag="(vii)")
    return rep


def _bijection_witness(r: Relation):
    """An element where ``r`` fails to be a total single-valued bijection."""
    seen = {}
    for x, y in sorted(r.pairs, key=repr):
        if y in seen:
            return {"collision": [seen[y], x], "image": y}
        seen[y] = x
    dom = {x for x, _ in r.pairs}
    if len(dom) != len(r.pairs):
        return {"multivalued": sorted((x for x in dom if len(r.image(x)) > 1), key=repr)[:1]}
    missing = [x for x in r.dom if x not in dom] or [y for y in r.cod if y not in seen]
    return {"missing": missing[:1]}


def vertical_inverse_of_left(h: Hopfoid) -> Relation:
    """``i~V = i o i~H``, recovered from the antipode and the star."""
    return compose(h.star, h.i)


def horizontal_units(h: Hopfoid) -> frozenset:
    """The subset ``H``: image of ``e o t o epsilon^t``."""
    return points(chain(transpose(h.epsilon), h.t, h.e))


def core_monoid(h: Hopfoid) -> StarMonoid:
    C = h.base
    et = transpose(h.e)
    m = chain(tensor(h.e, h.e), h.m, et)
    unit = compose(subset_as_relation(h.carrier, horizontal_units(h)), et)
    star = chain(h.e, vertical_inverse_of_left(h), et)
    sm = StarMonoid(C, m, unit, star)
    rep = check_star_monoid(sm, "core monoid")
    if not rep.ok:
        raise ValidationError(f"core monoid fails {rep.failures()[0].name}", rep)
    return sm


def build_double(h: Hopfoid) -> DoubleGroupoid:
    D = h.carrier
    try:
        top = from_star_monoid(comonoid_as_monoid(h))
    except ExtractionError as exc:
        raise ReverseError("top", str(exc), exc.witness) from exc
    top = _rename(top, "V")
    hset = horizontal_units(h)
    try:
        left = from_star_monoid(StarMonoid(D, h.m, subset_as_relation(D, hset), vertical_inverse_of_left(h)))
    except ExtractionError as exc:
        raise ReverseError("left", str(exc), exc.witness) from exc
    left = _rename(left, "H")
    try:
        side_h = restrict_groupoid(top, hset, "H")
        side_v = restrict_groupoid(left, set(top.objects), "V")
    except RestrictionError as exc:
        raise ReverseError("restrict", str(exc), exc.witness) from exc
    d = DoubleGroupoid(D, side_v=side_v, side_h=side_h, top=top, left=left)
    rep = validate_double(d)
    if not rep.ok:
        raise ReverseError("validate", f"rebuilt double groupoid fails {rep.failures()[0].name}",
                           rep.failures()[0].witness)
    return d


def _rename(g, name):
    return type(g)(Carrier(name, g.objects.elements), g.arrows, g.src, g.tgt, g.unit, g.inv, g.mul)


def roundtrip_double(d: DoubleGroupoid) -> CheckReport:
    rep = CheckReport("double -> hopfoid -> double")
    try:
        back = build_double(build_hopfoid(d))
    except (ReverseError, ValidationError) as exc:
        rep.add("rebuild", False, str(exc))
        return rep
    want = embed_units(d)
    rep.add("squares", back.squares == want.squares)
    for name in ("top", "left", "side_v", "side_h"):
        rep.add(name, getattr(back, name) == getattr(want, name), tag="structure")
    return rep


def roundtrip_hopfoid(h: Hopfoid) -> CheckReport:
    rep = CheckReport("hopfoid -> double -> hopfoid")
    try:
        back = build_hopfoid(build_double(h))
    except (ReverseError, ValidationError) as exc:
        rep.add("rebuild", False, str(exc))
        return rep
    rep.add("carrier", back.carrier == h.carrier)
    rep.add("base", back.base == h.base)
    for name in RELATIONS:
        rep.equal(name, getattr(back, name), getattr(h, name), tag="relation")
    return rep


def inertia_hopfoid_oracle(g) -> Hopfoid:
    """Hand-coded hopfoid of the pair double groupoid ``G x G``.

    target (x, y) -> x y^-1, source (x, y) -> y^-1 x, unit x -> {x} x M,
    antipode (x, y) -> (y^-1, x^-1), product ((x, a), (y, b)) -> (xy, ab),
    coproduct (x, y) -> ((x, k), (k, y)) for every arrow k.
    """
    G = list(g.arrows)
    inv, mul, src, tgt, unit = g.inv, g.mul, g.src, g.tgt, g.unit
    D = Carrier(f"{g.arrows.name}^2", [(x, y) for x in G for y in G])
    C = Carrier("C", [(x, unit[src[x]]) for x in G])
    DD = product(D, D)

    def core(x):
        return (x, unit[src[x]])

    t = [((x, y), core(mul[x, inv[y]])) for x in G for y in G if src[x] == src[y]]
    s = [((x, y), core(mul[inv[y], x])) for x in G for y in G if tgt[x] == tgt[y]]
    e = [(core(x), (x, unit[o])) for x in G for o in g.objects]
    i = [((x, y), (inv[y], inv[x])) for x in G for y in G]
    m = [(((x, a), (y, b)), (mul[x, y], mul[a, b]))
         for x in G for y in G for a in G for b in G
         if (x, y) in mul and (a, b) in mul]
    delta = [((x, y), ((x, k), (k, y))) for x in G for y in G for k in G]
    return Hopfoid(
        carrier=D,
        base=C,
        delta=Relation(D, DD, delta),
        epsilon=Relation(D, PT, (((x, x), ()) for x in G)),
        star=Relation(D, D, (((x, y), (y, x)) for x in G for y in G)),
        t=Relation(D, C, t),
        s=Relation(D, C, s),
        e=Relation(C, D, e),
        m=Relation(DD, D, m),
        i=Relation(D, D, i),
    )
