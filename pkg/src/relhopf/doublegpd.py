"""Finite double groupoids, square calculus, cores, and leaf quotients.

A square ``a`` has four edges::

              top = s~H(a)          (in V)
            +-----------+
  left =    |     a     |  right = s~V(a)     (in H)
  t~V(a)    +-----------+
             bottom = t~H(a)

The top groupoid ``D => V`` (maps ``s~H, t~H, 1~H, i~H, m~H``) composes
vertically: ``a o~H b`` puts ``b`` on top of ``a``.  The left groupoid
``D => H`` (maps ``s~V, t~V, 1~V, i~V, m~V``) composes horizontally:
``a o~V b`` puts ``b`` to the right of ``a``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from relhopf.groupoid import Groupoid, ValidationError, validate_groupoid
from relhopf.relcat import Carrier, Relation
from relhopf.report import CheckReport


class CoreError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class StructureError(Exception):
    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


WHICH = ("sH", "sV", "tH", "tV")


@dataclass(frozen=True)
class DoubleGroupoid:
    squares: Carrier
    side_v: Groupoid  # V => M, the right groupoid
    side_h: Groupoid  # H => M, the bottom groupoid
    top: Groupoid  # D => V
    left: Groupoid  # D => H

    # tilded structure maps, named as in the square calculus
    def sH(self, a):
        return self.top.src[a]

    def tH(self, a):
        return self.top.tgt[a]

    def sV(self, a):
        return self.left.src[a]

    def tV(self, a):
        return self.left.tgt[a]

    def vert(self, a, b):
        """``a o~H b``: ``b`` stacked on top of ``a``; None if not composable."""
        return self.top.mul.get((a, b))

    def horiz(self, a, b):
        """``a o~V b``: ``b`` placed right of ``a``; None if not composable."""
        return self.left.mul.get((a, b))

    def unit_h(self, v):
        """``1~H_v``: identity square for vertical composition."""
        return self.top.unit[v]

    def unit_v(self, h):
        """``1~V_h``: identity square for horizontal composition."""
        return self.left.unit[h]

    def antipode(self, a):
        """``i~V(i~H(a))``."""
        return self.left.inv[self.top.inv[a]]


class Square(NamedTuple):
    element: object
    top: object
    bottom: object
    left: object
    right: object


def square(d: DoubleGroupoid, a) -> Square:
    return Square(a, d.sH(a), d.tH(a), d.tV(a), d.sV(a))


def _first(it):
    for x in it:
        return x
    return None


def validate_double(d: DoubleGroupoid) -> CheckReport:
    rep = CheckReport("double groupoid")
    V, H = d.side_v, d.side_h
    for name, g in (("top", d.top), ("left", d.left), ("right", V), ("bottom", H)):
        rep.extend(validate_groupoid(g, name), prefix=f"{name}: ")
    rep.add("carriers agree",
            d.top.arrows == d.squares and d.left.arrows == d.squares and d.top.objects == V.arrows
            and d.left.objects == H.arrows and V.objects == H.objects,
            {"squares": len(d.squares)})
    # later checks only need total, well-typed tables; axiom failures are
    # reported but do not stop the remaining checks
    structural = ("maps total", "product defined exactly on composable pairs", "carriers agree")
    if any(e.name.endswith(structural) for e in rep.failures()):
        return rep

    D = list(d.squares)
    top, left = d.top, d.left
    hcomp = list(left.composable())
    vcomp = list(top.composable())

    # structure maps of the top groupoid are homomorphisms left -> right
    for name, f, fo in (("s~H", top.src, H.src), ("t~H", top.tgt, H.tgt)):
        w = _first((a, b) for a, b in hcomp if f[left.mul[a, b]] != V.mul.get((f[a], f[b])))
        rep.add(f"{name} preserves horizontal products", w is None, w, tag="homomorphism")
        w = _first(a for a in D if V.src[f[a]] != fo[left.src[a]] or V.tgt[f[a]] != fo[left.tgt[a]])
        rep.add(f"{name} preserves endpoints", w is None, w, tag="homomorphism")
        w = _first(h for h in H.arrows if f[left.unit[h]] != V.unit[fo[h]])
        rep.add(f"{name} preserves units", w is None, w, tag="homomorphism")
    for name, f, fo in (("s~V", left.src, V.src), ("t~V", left.tgt, V.tgt)):
        w = _first((a, b) for a, b in vcomp if f[top.mul[a, b]] != H.mul.get((f[a], f[b])))
        rep.add(f"{name} preserves vertical products", w is None, w, tag="homomorphism")
        w = _first(a for a in D if H.src[f[a]] != fo[top.src[a]] or H.tgt[f[a]] != fo[top.tgt[a]])
        rep.add(f"{name} preserves endpoints", w is None, w, tag="homomorphism")
        w = _first(v for v in V.arrows if f[top.unit[v]] != H.unit[fo[v]])
        rep.add(f"{name} preserves units", w is None, w, tag="homomorphism")

    w = _first((a, b) for a, b in hcomp if top.inv[left.mul[a, b]] != left.mul.get((top.inv[a], top.inv[b])))
    rep.add("i~H preserves horizontal products", w is None, w, tag="homomorphism")
    w = _first(a for a in D if left.src[top.inv[a]] != H.inv[left.src[a]]
               or left.tgt[top.inv[a]] != H.inv[left.tgt[a]])
    rep.add("i~H covers i_H", w is None, w, tag="homomorphism")
    w = _first((a, b) for a, b in vcomp if left.inv[top.mul[a, b]] != top.mul.get((left.inv[a], left.inv[b])))
    rep.add("i~V preserves vertical products", w is None, w, tag="homomorphism")
    w = _first(a for a in D if top.src[left.inv[a]] != V.inv[top.src[a]]
               or top.tgt[left.inv[a]] != V.inv[top.tgt[a]])
    rep.add("i~V covers i_V", w is None, w, tag="homomorphism")
    w = _first((u, v) for u, v in V.composable()
               if left.mul.get((top.unit[u], top.unit[v])) != top.unit[V.mul[u, v]])
    rep.add("1~H preserves products", w is None, w, tag="homomorphism")
    w = _first((u, v) for u, v in H.composable()
               if top.mul.get((left.unit[u], left.unit[v])) != left.unit[H.mul[u, v]])
    rep.add("1~V preserves products", w is None, w, tag="homomorphism")
    w = _first(x for x in V.objects if top.unit[V.unit[x]] != left.unit[H.unit[x]])
    rep.add("unit exchange", w is None, w, tag="homomorphism")

    corners = (
        ("top-left corner", lambda a: V.tgt[top.src[a]], lambda a: H.src[left.tgt[a]]),
        ("top-right corner", lambda a: V.src[top.src[a]], lambda a: H.src[left.src[a]]),
        ("bottom-left corner", lambda a: V.tgt[top.tgt[a]], lambda a: H.tgt[left.tgt[a]]),
        ("bottom-right corner", lambda a: V.src[top.tgt[a]], lambda a: H.tgt[left.src[a]]),
    )
    for name, f, g in corners:
        w = _first(a for a in D if f(a) != g(a))
        rep.add(name, w is None, w, tag="corner")

    w = _interchange_witness(d)
    rep.add("interchange", w is None, w, tag="interchange")

    image = {(left.src[a], top.src[a]) for a in D}
    fiber = {(h, v) for h in H.arrows for v in V.arrows if H.src[h] == V.src[v]}
    w = _first(sorted(fiber - image, key=repr))
    rep.add("double source surjective", w is None and image <= fiber, w, tag="double source")
    return rep


def interchange_blocks(d: DoubleGroupoid):
    """All 2x2 blocks ``(a, b, c, e)``: ``a`` bottom-left, ``b`` bottom-right,
    ``c`` top-left, ``e`` top-right, with every edge composition defined."""
    top, left = d.top, d.left
    right_of, above = {}, {}
    for a, b in left.composable():
        right_of.setdefault(a, []).append(b)
    for a, c in top.composable():
        above.setdefault(a, []).append(c)
    by_corner = {}
    for x in d.squares:
        by_corner.setdefault((left.tgt[x], top.tgt[x]), []).append(x)
    for a in d.squares:
        for b in right_of.get(a, ()):
            for c in above.get(a, ()):
                for e in by_corner.get((left.src[c], top.src[b]), ()):
                    yield a, b, c, e


def _interchange_witness(d: DoubleGroupoid):
    for a, b, c, e in interchange_blocks(d):
        rows = d.vert(d.horiz(a, b), d.horiz(c, e))
        cols = d.horiz(d.vert(a, c), d.vert(b, e))
        if rows is None or rows != cols:
            return (a, b, c, e)
    return None


def require_valid_double(d: DoubleGroupoid) -> CheckReport:
    rep = validate_double(d)
    if not rep.ok:
        raise ValidationError(f"invalid double groupoid: {rep.failures()[0].name}", rep)
    return rep


def transpose_double(d: DoubleGroupoid, check: bool = True) -> DoubleGroupoid:
    if check:
        require_valid_double(d)
    return DoubleGroupoid(d.squares, side_v=d.side_h, side_h=d.side_v, top=d.left, left=d.top)


def embed_units(d: DoubleGroupoid) -> DoubleGroupoid:
    """Re-express V, H and M as subsets of D through the unit embeddings."""
    V, H = d.side_v, d.side_h
    to_d_v = dict(d.top.unit)
    to_d_h = dict(d.left.unit)
    to_d_m = {x: d.top.unit[V.unit[x]] for x in V.objects}

    def side(g, arrow_map, name):
        arrows = Carrier(name, [arrow_map[a] for a in g.arrows])
        return Groupoid(
            objects=Carrier(name + ".units", [to_d_m[x] for x in g.objects]),
            arrows=arrows,
            src={arrow_map[a]: to_d_m[x] for a, x in g.src.items()},
            tgt={arrow_map[a]: to_d_m[x] for a, x in g.tgt.items()},
            unit={to_d_m[x]: arrow_map[a] for x, a in g.unit.items()},
            inv={arrow_map[a]: arrow_map[b] for a, b in g.inv.items()},
            mul={(arrow_map[a], arrow_map[b]): arrow_map[c] for (a, b), c in g.mul.items()},
        )

    return DoubleGroupoid(
        squares=d.squares,
        side_v=side(V, to_d_v, "V"),
        side_h=side(H, to_d_h, "H"),
        top=d.top.relabel_objects(to_d_v, "V"),
        left=d.left.relabel_objects(to_d_h, "H"),
    )


def core_set(d: DoubleGroupoid) -> list:
    vu = d.side_v.unit_arrows()
    hu = d.side_h.unit_arrows()
    return [a for a in d.squares if d.sH(a) in vu and d.sV(a) in hu]


def target_core_set(d: DoubleGroupoid) -> list:
    """Squares whose left and bottom edges are units."""
    vu = d.side_v.unit_arrows()
    hu = d.side_h.unit_arrows()
    return [a for a in d.squares if d.tH(a) in vu and d.tV(a) in hu]


def core_groupoid_square(d: DoubleGroupoid) -> Groupoid:
    """The core groupoid over M, with products read off 2x2 square diagrams.

    For core squares ``c, c'`` the product fills the block with ``c`` bottom
    left, ``1~H`` of the bottom of ``c'`` bottom right, ``1~V`` of the left
    of ``c'`` top left and ``c'`` top right; rows-first and columns-first
    must agree.
    """
    V = d.side_v
    core = core_set(d)
    core_s = set(core)
    src = {c: V.src[d.sH(c)] for c in core}
    tgt = {c: V.tgt[d.tH(c)] for c in core}
    unit = {x: d.unit_h(V.unit[x]) for x in V.objects}
    mul = {}
    for c in core:
        for c2 in core:
            if src[c] != tgt[c2]:
                continue
            br = d.unit_h(d.tH(c2))
            tl = d.unit_v(d.tV(c2))
            rows = d.vert(d.horiz(c, br), d.horiz(tl, c2)) if d.horiz(c, br) is not None else None
            cols = d.horiz(d.vert(c, tl), d.vert(br, c2)) if d.vert(c, tl) is not None else None
            if rows is None or cols is None or rows != cols:
                raise CoreError("core product diagram not composable or ambiguous", (c, c2))
            if rows not in core_s:
                raise CoreError("core product left the core", (c, c2, rows))
            mul[c, c2] = rows
    inv = {}
    for c in core:
        cands = [c2 for c2 in core if mul.get((c, c2)) == unit[tgt[c]] and mul.get((c2, c)) == unit[src[c]]]
        if len(cands) != 1:
            raise CoreError("core element without a unique inverse", c)
        inv[c] = cands[0]
    objs = Carrier("M", list(V.objects))
    return Groupoid(objs, Carrier("C", core), src, tgt, unit, inv, mul)


def coisotropic_subset(d: DoubleGroupoid, which: str) -> list:
    vu = d.side_v.unit_arrows()
    hu = d.side_h.unit_arrows()
    test = {
        "sH": lambda a: d.sH(a) in vu,
        "sV": lambda a: d.sV(a) in hu,
        "tH": lambda a: d.tH(a) in vu,
        "tV": lambda a: d.tV(a) in hu,
    }[which]
    return [a for a in d.squares if test(a)]


def leaf(d: DoubleGroupoid, which: str, a) -> frozenset:
    """The leaf through ``a`` obtained by translating with unit squares."""
    V, H = d.side_v, d.side_h
    if which == "sH":
        m = V.src[d.sH(a)]
        out = {d.vert(a, d.unit_v(lam)) for lam in H.arrows if H.tgt[lam] == m}
    elif which == "sV":
        m = H.src[d.sV(a)]
        out = {d.horiz(a, d.unit_h(lam)) for lam in V.arrows if V.tgt[lam] == m}
    elif which == "tH":
        m = V.tgt[d.tH(a)]
        out = {d.vert(d.unit_v(lam), a) for lam in H.arrows if H.src[lam] == m}
    elif which == "tV":
        m = H.tgt[d.tV(a)]
        out = {d.horiz(d.unit_h(lam), a) for lam in V.arrows if V.src[lam] == m}
    else:
        raise ValueError(f"unknown coisotropic subset {which!r}")
    if None in out:
        raise StructureError(f"leaf formula hit a non-composable pair at {a!r}", a)
    return frozenset(out)


def leaf_partition(d: DoubleGroupoid, which: str) -> list[frozenset]:
    subset = coisotropic_subset(d, which)
    members = set(subset)
    leaves = {}
    for a in subset:
        lf = leaf(d, which, a)
        if a not in lf or not lf <= members:
            raise StructureError(f"leaf through {a!r} is not inside the subset", a)
        leaves[a] = lf
    for a, lf in leaves.items():
        for b in lf:
            if leaves[b] != lf:
                raise StructureError("leaves overlap without coinciding", (a, b))
    seen, out = set(), []
    for a in subset:
        if leaves[a] not in seen:
            seen.add(leaves[a])
            out.append(leaves[a])
    return out


def _core_carrier(d):
    return Carrier("C", core_set(d))


def quotient_relation(d: DoubleGroupoid, which: str) -> Relation:
    """Send each point to the core representative of its leaf."""
    section = set(core_set(d)) if which in ("sH", "sV") else set(target_core_set(d))
    pairs = []
    for lf in leaf_partition(d, which):
        hits = lf & section
        if len(hits) != 1:
            raise StructureError(f"leaf meets the core {len(hits)} times", sorted(lf, key=repr)[:2])
        (rep,) = hits
        if which in ("tH", "tV"):
            rep = d.antipode(rep)
        pairs.extend((a, rep) for a in lf)
    return Relation(d.squares, _core_carrier(d), pairs)


def reduction_relation(d: DoubleGroupoid, which: str) -> Relation:
    """Closed-form reduction of a coisotropic subset onto the core."""
    V, H = d.side_v, d.side_h
    pairs = []
    for a in coisotropic_subset(d, which):
        if which == "sH":
            b = d.vert(a, d.unit_v(H.inv[d.sV(a)]))
        elif which == "sV":
            b = d.horiz(a, d.unit_h(V.inv[d.sH(a)]))
        elif which == "tH":
            b = d.antipode(d.vert(d.unit_v(H.inv[d.tV(a)]), a))
        else:
            b = d.horiz(d.antipode(a), d.unit_h(d.tH(a)))
        if b is None:
            raise StructureError(f"reduction formula undefined at {a!r}", a)
        pairs.append((a, b))
    return Relation(d.squares, _core_carrier(d), pairs)
