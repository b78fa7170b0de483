"""Finite sets and relations between them.

Composition is diagrammatic throughout: ``compose(r, s)`` means "r, then s".

Product carriers are kept flat: the tensor of ``A x B`` with ``C`` is the
three-factor carrier ``A x B x C`` whose elements are 3-tuples, and the
one-point carrier :data:`PT` is the empty product with the single element
``()``.  This makes the monoidal structure strictly associative and unital,
so long diagram legs can be written without associator bookkeeping.
Elements of an atomic carrier are opaque hashable tokens (strings, or
tuples of tokens); they are never split when a product is flattened.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from functools import cached_property
from typing import Iterable, NamedTuple


class RelationError(Exception):
    pass


class CompositionError(RelationError):
    pass


class MembershipError(RelationError):
    pass


class Carrier:
    """A finite set, either atomic (explicit elements) or a flat product."""

    def __init__(self, name: str, elements: Iterable = (), factors: tuple | None = None):
        self.name = name
        self.factors = factors
        if factors is None:
            elems = tuple(elements)
            if len(set(elems)) != len(elems):
                raise MembershipError(f"carrier {name!r} has repeated elements")
            self._elements = elems

    @property
    def is_atomic(self) -> bool:
        return self.factors is None

    @property
    def arity(self) -> int:
        return 1 if self.factors is None else len(self.factors)

    @property
    def atoms(self) -> tuple:
        return (self,) if self.factors is None else self.factors

    @cached_property
    def elements(self) -> tuple:
        if self.factors is None:
            return self._elements
        return tuple(itertools.product(*(f.elements for f in self.factors)))

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self._elements)

    def __len__(self):
        if self.factors is None:
            return len(self._elements)
        n = 1
        for f in self.factors:
            n *= len(f)
        return n

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x) -> bool:
        if self.factors is None:
            try:
                return x in self._set
            except TypeError:
                return False
        if not isinstance(x, tuple) or len(x) != len(self.factors):
            return False
        return all(v in f for v, f in zip(x, self.factors))

    def __eq__(self, other):
        if not isinstance(other, Carrier):
            return NotImplemented
        if self.factors is None or other.factors is None:
            return self.factors is None and other.factors is None and self._set == other._set
        return self.factors == other.factors

    def __hash__(self):
        if self.factors is None:
            return hash(self._set)
        return hash(self.factors)

    def __repr__(self):
        if self.factors is None:
            return f"Carrier({self.name!r}, {len(self)} elements)"
        return "Carrier(" + " x ".join(f.name for f in self.factors) + ")" if self.factors else "Carrier(pt)"

    def subset(self, name: str, keep) -> Carrier:
        """Atomic carrier on the elements of ``self`` in ``keep``, in carrier order."""
        keep = set(keep)
        missing = [x for x in keep if x not in self]
        if missing:
            raise MembershipError(f"{missing[0]!r} is not an element of {self.name!r}")
        return Carrier(name, [x for x in self.elements if x in keep])


PT = Carrier("pt", factors=())


def product(*carriers: Carrier) -> Carrier:
    factors = tuple(a for c in carriers for a in c.atoms)
    if len(factors) == 1:
        return factors[0]
    if not factors:
        return PT
    return Carrier(" x ".join(f.name for f in factors), factors=factors)


def _split(x, arities):
    flat = (x,) if sum(arities) == 1 else x
    out, k = [], 0
    for n in arities:
        chunk = flat[k:k + n]
        k += n
        out.append(chunk[0] if n == 1 else chunk)
    return out


def _join(parts, arities):
    flat = ()
    for p, n in zip(parts, arities):
        flat += (p,) if n == 1 else p
    return flat[0] if len(flat) == 1 else flat


def _splitter(arities):
    """Fast ``_split`` specialised to fixed arities."""
    total = sum(arities)
    if total == 1:
        return lambda x: [x if n == 1 else () for n in arities]
    cuts, k = [], 0
    for n in arities:
        cuts.append((k, k + n, n == 1))
        k += n
    return lambda x: [x[a] if one else x[a:b] for a, b, one in cuts]


def _joiner(arities):
    """Fast ``_join`` specialised to fixed arities."""
    if sum(arities) == 1:
        i = next(j for j, n in enumerate(arities) if n == 1)
        return lambda parts: parts[i]
    ones = [n == 1 for n in arities]

    def join(parts):
        flat = ()
        for p, one in zip(parts, ones):
            flat += (p,) if one else p
        return flat

    return join


class Relation:
    """A subset of ``dom x cod`` viewed as a morphism ``dom -> cod``.

    ``image(x)`` assumes ``x`` is an element of ``dom``.
    """

    def __init__(self, dom: Carrier, cod: Carrier, pairs: Iterable, *, check: bool = True):
        self.dom = dom
        self.cod = cod
        pairs = frozenset(pairs)
        if check:
            for x, y in pairs:
                if x not in dom:
                    raise MembershipError(f"{x!r} is not an element of {dom.name!r}")
                if y not in cod:
                    raise MembershipError(f"{y!r} is not an element of {cod.name!r}")
        self._pairs = pairs

    @property
    def pairs(self) -> frozenset:
        return self._pairs

    @cached_property
    def _index(self) -> dict:
        idx = defaultdict(list)
        for x, y in self.pairs:
            idx[x].append(y)
        return dict(idx)

    def image(self, x) -> tuple:
        return tuple(self._index.get(x, ()))

    def domain(self) -> frozenset:
        return frozenset(x for x, _ in self.pairs)

    def range(self) -> frozenset:
        return frozenset(y for _, y in self.pairs)

    def as_function(self) -> dict:
        """The relation as a dict, assuming it is single-valued."""
        out = {}
        for x, y in self.pairs:
            if x in out and out[x] != y:
                raise RelationError(f"relation is not single-valued at {x!r}")
            out[x] = y
        return out

    def __len__(self):
        return len(self.pairs)

    def __eq__(self, other):
        if not isinstance(other, Relation):
            return NotImplemented
        return relations_equal(self, other)

    def __hash__(self):
        return hash((self.dom, self.cod, self.pairs))

    def __repr__(self):
        return f"Relation({self.dom.name} -> {self.cod.name}, {len(self.pairs)} pairs)"


class _Lazy(Relation):
    # pairs are materialized only on demand; composition only needs image()
    def __init__(self, dom, cod):
        self.dom = dom
        self.cod = cod

    @cached_property
    def pairs(self) -> frozenset:
        return frozenset((x, y) for x in self.dom.elements for y in self.image(x))


class _Identity(_Lazy):
    def __init__(self, carrier):
        super().__init__(carrier, carrier)

    def image(self, x):
        return (x,)


class _Tensor(_Lazy):
    def __init__(self, parts):
        super().__init__(product(*(r.dom for r in parts)), product(*(r.cod for r in parts)))
        self.parts = parts
        self._dom_ar = [r.dom.arity for r in parts]
        self._cod_ar = [r.cod.arity for r in parts]
        self._split = _splitter(self._dom_ar)
        self._join = _joiner(self._cod_ar)

    @cached_property
    def pairs(self):
        pairsets = [list(r.pairs) for r in self.parts]
        out = set()
        for combo in itertools.product(*pairsets):
            out.add((_join([p[0] for p in combo], self._dom_ar), _join([p[1] for p in combo], self._cod_ar)))
        return frozenset(out)

    def image(self, x):
        imgs = [r.image(v) for r, v in zip(self.parts, self._split(x))]
        join = self._join
        return tuple(join(combo) for combo in itertools.product(*imgs))


class _Swap(_Lazy):
    def __init__(self, a, b):
        super().__init__(product(a, b), product(b, a))
        self._split = _splitter([a.arity, b.arity])
        self._join = _joiner([b.arity, a.arity])

    def image(self, x):
        u, v = self._split(x)
        return (self._join([v, u]),)


def identity(c: Carrier) -> Relation:
    return _Identity(c)


def swap(a: Carrier, b: Carrier) -> Relation:
    """The symmetry ``a x b -> b x a`` exchanging components."""
    return _Swap(a, b)


def graph(dom: Carrier, cod: Carrier, mapping) -> Relation:
    """Graph of a (partial) map given as a dict."""
    return Relation(dom, cod, mapping.items())


def compose(r: Relation, s: Relation) -> Relation:
    """Diagrammatic composite: first ``r``, then ``s``."""
    if r.cod != s.dom:
        raise CompositionError(f"cannot compose {r.dom.name} -> {r.cod.name} with {s.dom.name} -> {s.cod.name}")
    pairs = {(x, z) for x, y in r.pairs for z in s.image(y)}
    return Relation(r.dom, s.cod, pairs, check=False)


def chain(*rels: Relation) -> Relation:
    """Composite of a sequence of relations, evaluated one source point at a time."""
    for r, s in zip(rels, rels[1:]):
        if r.cod != s.dom:
            raise CompositionError(f"cannot compose {r.dom.name} -> {r.cod.name} with {s.dom.name} -> {s.cod.name}")
    first, rest = rels[0], rels[1:]
    pairs = set()
    for x in {x for x, _ in first.pairs} if not isinstance(first, _Lazy) else first.dom.elements:
        frontier = set(first.image(x))
        for r in rest:
            if not frontier:
                break
            frontier = {z for y in frontier for z in r.image(y)}
        pairs.update((x, z) for z in frontier)
    return Relation(first.dom, rels[-1].cod, pairs, check=False)


def transpose(r: Relation) -> Relation:
    return Relation(r.cod, r.dom, ((y, x) for x, y in r.pairs), check=False)


def tensor(*rels: Relation) -> Relation:
    if len(rels) == 1:
        return rels[0]
    return _Tensor(tuple(rels))


class Kind(NamedTuple):
    surjective: bool
    injective: bool
    cosurjective: bool
    coinjective: bool


def classify(r: Relation) -> Kind:
    dom_seen, cod_seen = set(), set()
    left, right = defaultdict(set), defaultdict(set)
    for x, y in r.pairs:
        dom_seen.add(x)
        cod_seen.add(y)
        left[x].add(y)
        right[y].add(x)
    return Kind(
        surjective=len(cod_seen) == len(r.cod),
        injective=all(len(v) == 1 for v in right.values()),
        cosurjective=len(dom_seen) == len(r.dom),
        coinjective=all(len(v) == 1 for v in left.values()),
    )


def is_reduction(r: Relation) -> bool:
    """True iff ``r o r^t = id`` on the codomain."""
    return relations_equal(compose(transpose(r), r), identity(r.cod))


def is_coreduction(r: Relation) -> bool:
    return is_reduction(transpose(r))


def is_bijection(r: Relation) -> bool:
    return all(classify(r))


def relations_equal(r: Relation, s: Relation) -> bool:
    return r.dom == s.dom and r.cod == s.cod and r.pairs == s.pairs


def difference_witness(r: Relation, s: Relation):
    """A small description of why two relations differ."""
    if r.dom != s.dom or r.cod != s.cod:
        return {"carriers": [[r.dom.name, r.cod.name], [s.dom.name, s.cod.name]]}
    only_left = sorted(r.pairs - s.pairs, key=repr)[:3]
    only_right = sorted(s.pairs - r.pairs, key=repr)[:3]
    return {"only_left": only_left, "only_right": only_right}


def subset_as_relation(c: Carrier, subset) -> Relation:
    """The relation ``pt -> c`` picking out ``subset``."""
    subset = list(subset)
    for x in subset:
        if x not in c:
            raise MembershipError(f"{x!r} is not an element of {c.name!r}")
    return Relation(PT, c, (((), x) for x in subset), check=False)


def points(r: Relation) -> frozenset:
    """The subset named by a relation ``pt -> c``."""
    return frozenset(y for x, y in r.pairs if x == ())
