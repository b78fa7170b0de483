"""Example groupoids, the two double-groupoid families, and the test corpus."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from relhopf.doublegpd import DoubleGroupoid, require_valid_double, transpose_double
from relhopf.groupoid import Groupoid, require_valid
from relhopf.relcat import Carrier


class TableError(ValueError):
    def __init__(self, axiom: str, witness=None):
        super().__init__(f"not a group table: {axiom} fails at {witness!r}")
        self.axiom = axiom
        self.witness = witness


def group_from_table(name: str, table, elements=None) -> Groupoid:
    """One-object groupoid from a multiplication table.

    ``table`` is either a dict ``{(g, h): gh}`` or a square list of rows
    indexed like ``elements``.
    """
    if isinstance(table, dict):
        elements = list(elements or dict.fromkeys(g for g, _ in table))
        mul = dict(table)
    else:
        elements = list(elements or [str(i) for i in range(len(table))])
        mul = {}
        for i, row in enumerate(table):
            if len(row) != len(elements):
                raise TableError("squareness", i)
            for j, v in enumerate(row):
                mul[elements[i], elements[j]] = elements[v] if isinstance(v, int) else v
    els = set(elements)
    for g, h in itertools.product(elements, repeat=2):
        if mul.get((g, h)) not in els:
            raise TableError("closure", (g, h))
    for g, h, k in itertools.product(elements, repeat=3):
        if mul[mul[g, h], k] != mul[g, mul[h, k]]:
            raise TableError("associativity", (g, h, k))
    ids = [e for e in elements if all(mul[e, g] == g == mul[g, e] for g in elements)]
    if not ids:
        raise TableError("identity", None)
    one = ids[0]
    inv = {}
    for g in elements:
        cands = [h for h in elements if mul[g, h] == one == mul[h, g]]
        if not cands:
            raise TableError("inverses", g)
        inv[g] = cands[0]
    obj = "*"
    g = Groupoid(
        objects=Carrier(name + ".obj", [obj]),
        arrows=Carrier(name, elements),
        src={x: obj for x in elements},
        tgt={x: obj for x in elements},
        unit={obj: one},
        inv=inv,
        mul=mul,
    )
    require_valid(g, name)
    return g


def cyclic_group(n: int) -> Groupoid:
    els = [str(i) for i in range(n)]
    return group_from_table(f"Z{n}", [[(i + j) % n for j in range(n)] for i in range(n)], els)


def symmetric_group(n: int) -> Groupoid:
    """Permutations in one-line notation; ``g*h`` is ``g`` after ``h``."""
    perms = list(itertools.permutations(range(n)))
    tok = {p: "".join(map(str, p)) for p in perms}
    table = {(tok[p], tok[q]): tok[tuple(p[q[i]] for i in range(n))] for p in perms for q in perms}
    return group_from_table(f"S{n}", table, [tok[p] for p in perms])


def trivial_groupoid(points, name="M") -> Groupoid:
    pts = list(points)
    return Groupoid(
        objects=Carrier(name, pts),
        arrows=Carrier(name, pts),
        src={x: x for x in pts},
        tgt={x: x for x in pts},
        unit={x: x for x in pts},
        inv={x: x for x in pts},
        mul={(x, x): x for x in pts},
    )


def pair_groupoid(points, name=None) -> Groupoid:
    """Arrows ``(x, y)`` go from ``y`` to ``x``; ``(x, y)(y, z) = (x, z)``."""
    pts = list(points)
    name = name or f"Pair{len(pts)}"
    arrows = [(x, y) for x in pts for y in pts]
    return Groupoid(
        objects=Carrier(name + ".obj", pts),
        arrows=Carrier(name, arrows),
        src={a: a[1] for a in arrows},
        tgt={a: a[0] for a in arrows},
        unit={x: (x, x) for x in pts},
        inv={(x, y): (y, x) for x, y in arrows},
        mul={((x, y), (y2, z)): (x, z) for x, y in arrows for y2, z in arrows if y == y2},
    )


def product_groupoid(g1: Groupoid, g2: Groupoid, name=None) -> Groupoid:
    arrows = [(a, b) for a in g1.arrows for b in g2.arrows]
    objs = [(x, y) for x in g1.objects for y in g2.objects]
    mul = {}
    for (a, c), x in g1.mul.items():
        for (b, d), y in g2.mul.items():
            mul[(a, b), (c, d)] = (x, y)
    return Groupoid(
        objects=Carrier((name or "P") + ".obj", objs),
        arrows=Carrier(name or f"{g1.arrows.name}x{g2.arrows.name}", arrows),
        src={(a, b): (g1.src[a], g2.src[b]) for a, b in arrows},
        tgt={(a, b): (g1.tgt[a], g2.tgt[b]) for a, b in arrows},
        unit={(x, y): (g1.unit[x], g2.unit[y]) for x, y in objs},
        inv={(a, b): (g1.inv[a], g2.inv[b]) for a, b in arrows},
        mul=mul,
    )


def disjoint_union(*gs: Groupoid, name=None) -> Groupoid:
    def tag(i, x):
        return (str(i), x)

    objs, arrows = [], []
    src, tgt, unit, inv, mul = {}, {}, {}, {}, {}
    for i, g in enumerate(gs):
        objs += [tag(i, x) for x in g.objects]
        arrows += [tag(i, a) for a in g.arrows]
        src.update({tag(i, a): tag(i, x) for a, x in g.src.items()})
        tgt.update({tag(i, a): tag(i, x) for a, x in g.tgt.items()})
        unit.update({tag(i, x): tag(i, a) for x, a in g.unit.items()})
        inv.update({tag(i, a): tag(i, b) for a, b in g.inv.items()})
        mul.update({(tag(i, a), tag(i, b)): tag(i, c) for (a, b), c in g.mul.items()})
    name = name or "+".join(g.arrows.name for g in gs)
    return Groupoid(Carrier(name + ".obj", objs), Carrier(name, arrows), src, tgt, unit, inv, mul)


def trivial_double(g: Groupoid) -> DoubleGroupoid:
    """Squares are arrows of ``g``; left and right are ``g``, top and bottom trivial."""
    require_valid(g)
    top = trivial_groupoid(g.arrows.elements, g.arrows.name)
    top = Groupoid(Carrier("V", g.arrows.elements), g.arrows, top.src, top.tgt, top.unit, top.inv, top.mul)
    bottom = trivial_groupoid(g.objects.elements, "H")
    bottom = Groupoid(g.objects, Carrier("H", g.objects.elements), bottom.src, bottom.tgt,
                      bottom.unit, bottom.inv, bottom.mul)
    left = Groupoid(Carrier("H", g.objects.elements), g.arrows, g.src, g.tgt, g.unit, g.inv, g.mul)
    d = DoubleGroupoid(g.arrows, side_v=g, side_h=bottom, top=top, left=left)
    require_valid_double(d)
    return d


def pair_double(g: Groupoid) -> DoubleGroupoid:
    """Squares ``(x, y)`` in ``G x G``.

    Top: pair groupoid over ``G``; left: product groupoid over ``M x M``;
    right: ``g``; bottom: pair groupoid on ``M``.
    """
    require_valid(g)
    arrows = list(g.arrows)
    sq = Carrier(f"{g.arrows.name}^2", [(x, y) for x in arrows for y in arrows])
    top = pair_groupoid(arrows, "V")
    top = Groupoid(g.arrows, sq, top.src, top.tgt, top.unit, top.inv, top.mul)
    bottom = pair_groupoid(g.objects.elements, "H")
    bottom = Groupoid(g.objects, bottom.arrows, bottom.src, bottom.tgt, bottom.unit, bottom.inv, bottom.mul)
    left = product_groupoid(g, g, sq.name)
    left = Groupoid(bottom.arrows, sq, left.src, left.tgt, left.unit, left.inv, left.mul)
    d = DoubleGroupoid(sq, side_v=g, side_h=bottom, top=top, left=left)
    require_valid_double(d)
    return d


def base_groupoids() -> dict[str, Groupoid]:
    """The named groupoids the corpus is built from."""
    gs = {
        "pt": trivial_groupoid(["p"], "pt"),
        "Triv2": trivial_groupoid(["p", "q"], "Triv2"),
        "Triv3": trivial_groupoid(["p", "q", "r"], "Triv3"),
        "Z2": cyclic_group(2),
        "Z3": cyclic_group(3),
        "Z4": cyclic_group(4),
        "S3": symmetric_group(3),
        "Pair2": pair_groupoid(["p", "q"], "Pair2"),
        "Pair3": pair_groupoid(["p", "q", "r"], "Pair3"),
        "Pair4": pair_groupoid(["p", "q", "r", "s"], "Pair4"),
    }
    gs["Z2+pt"] = disjoint_union(gs["Z2"], gs["pt"], name="Z2+pt")
    gs["Z3+Pair2"] = disjoint_union(gs["Z3"], gs["Pair2"], name="Z3+Pair2")
    gs["S3+Z2"] = disjoint_union(gs["S3"], gs["Z2"], name="S3+Z2")
    return gs


FAMILIES = ("trivial", "pair", "group", "disjoint-union")


@dataclass(frozen=True)
class CorpusSpec:
    max_arrows: int = 36
    seed: int = 0
    families: tuple = FAMILIES
    random_unions: int = 2

    def __post_init__(self):
        if self.max_arrows < 1:
            raise ValueError("max_arrows must be at least 1")


def groupoid_corpus(spec: CorpusSpec = CorpusSpec()) -> dict[str, Groupoid]:
    base = base_groupoids()
    out = {k: g for k, g in base.items() if len(g.arrows) <= spec.max_arrows}
    rng = random.Random(spec.seed)
    small = sorted(k for k in ("pt", "Z2", "Z3", "Pair2", "Triv2") if k in out)
    for _ in range(spec.random_unions):
        k1, k2 = rng.sample(small, 2)
        name = f"{k1}+{k2}"
        g = disjoint_union(base[k1], base[k2], name=name)
        if len(g.arrows) <= spec.max_arrows and name not in out:
            out[name] = g
    return out


def small_corpus(spec: CorpusSpec = CorpusSpec()) -> dict[str, DoubleGroupoid]:
    """Double groupoids with at most ``spec.max_arrows`` squares, keyed by name."""
    gs = groupoid_corpus(CorpusSpec(max_arrows=spec.max_arrows, seed=spec.seed,
                                    random_unions=spec.random_unions))

    def wanted(key):
        if key in ("Z2", "Z3", "Z4", "S3"):
            return "group" in spec.families
        if "+" in key:
            return "disjoint-union" in spec.families
        return True

    out = {}
    for key, g in gs.items():
        if not wanted(key):
            continue
        if "trivial" in spec.families and len(g.arrows) <= spec.max_arrows:
            out[f"trivial_double({key})"] = trivial_double(g)
        if "pair" in spec.families and len(g.arrows) ** 2 <= spec.max_arrows:
            d = pair_double(g)
            out[f"pair_double({key})"] = d
            out[f"transpose(pair_double({key}))"] = transpose_double(d)
    return out
