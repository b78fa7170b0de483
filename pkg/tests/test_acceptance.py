"""Acceptance criteria, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; under
pytest the lines are repeated in the terminal summary.
"""

import sys
import time

import pytest

from relhopf.doublegpd import (
    WHICH,
    DoubleGroupoid,
    core_groupoid_square,
    core_set,
    leaf_partition,
    quotient_relation,
    reduction_relation,
    target_core_set,
    transpose_double,
    validate_double,
)
from relhopf.generators import (
    base_groupoids,
    cyclic_group,
    groupoid_corpus,
    pair_double,
    small_corpus,
    symmetric_group,
    trivial_double,
)
from relhopf.groupoid import Groupoid, check_star_monoid, from_star_monoid, to_star_monoid
from relhopf.hopfoid import (
    RELATIONS,
    build_hopfoid,
    check_hopfoid,
    core_monoid,
    inertia_hopfoid_oracle,
    roundtrip_double,
    roundtrip_hopfoid,
)
from relhopf.relcat import Relation, compose, identity, is_reduction, transpose

RESULTS = {}


def record(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} ({detail})"
    RESULTS[num] = line
    print(line)
    return ok


_cache = {}


def corpus():
    if "d" not in _cache:
        _cache["d"] = small_corpus()
    return _cache["d"]


def hopfoids():
    if "h" not in _cache:
        _cache["h"] = {k: build_hopfoid(d) for k, d in corpus().items()}
    return _cache["h"]


def criterion_1():
    t0 = time.perf_counter()
    gs = groupoid_corpus()
    bad = []
    for name, g in gs.items():
        sm = to_star_monoid(g)
        if not check_star_monoid(sm).ok or from_star_monoid(sm) != g.embedded():
            bad.append(name)
    dt = time.perf_counter() - t0
    ok = not bad and len(gs) >= 12 and max(len(g.arrows) for g in gs.values()) <= 36 and dt < 5
    return record(1, "star-monoid round trip", ok, f"{len(gs)} groupoids, failures={bad}, {dt:.2f}s < 5s")


def criterion_2():
    t0 = time.perf_counter()
    gs = base_groupoids()
    names = ["Z2", "Z3", "Z4", "S3", "Pair2", "Pair3", "Pair4"]
    bad, n = [], 0
    for name in names:
        for fam, build in (("trivial", trivial_double), ("pair", pair_double)):
            d = build(gs[name])
            rep = validate_double(d)
            n += 1
            if not rep.ok or "interchange" not in rep.names():
                bad.append(f"{fam}({name})")
    dt = time.perf_counter() - t0
    return record(2, "double groupoid validity", not bad and dt < 30,
                  f"{n} instances, failures={bad}, {dt:.2f}s < 30s")


def _same_groupoid(a: Groupoid, b: Groupoid):
    return (a.arrows == b.arrows and set(a.objects) == set(b.objects) and a.src == b.src
            and a.tgt == b.tgt and a.unit == b.unit and a.inv == b.inv and a.mul == b.mul)


def criterion_3():
    bad = []
    for name, d in corpus().items():
        sq = core_groupoid_square(d).embedded()
        mon = from_star_monoid(core_monoid(hopfoids()[name]))
        if not _same_groupoid(sq, mon):
            bad.append(name)
    anchors = []
    for name, g in base_groupoids().items():
        core = core_groupoid_square(trivial_double(g))
        m = g.objects
        # trivial groupoid on M: one unit arrow per object, products only c*c = c
        if len(core.arrows) != len(m) or set(core.objects) != set(m) or core.mul != {(c, c): c for c in core.arrows}:
            anchors.append(f"trivial({name})")
        if len(g.arrows) ** 2 <= 36:
            core = core_groupoid_square(pair_double(g))
            emb = {x: (x, g.unit[g.src[x]]) for x in g.arrows}
            want = {(emb[a], emb[b]): emb[c] for (a, b), c in g.mul.items()}
            if core.mul != want or set(core.arrows) != set(emb.values()):
                anchors.append(f"pair({name})")
    return record(3, "core agreement", not bad and not anchors,
                  f"{len(corpus())} instances, mismatches={bad}, anchor failures={anchors}")


def criterion_4():
    bad, n = [], 0
    for name, d in corpus().items():
        core = set(core_set(d))
        tcore = set(target_core_set(d))
        for which in WHICH:
            n += 1
            try:
                leaves = leaf_partition(d, which)
                section = core if which in ("sH", "sV") else tcore
                meets = all(len(lf & section) == 1 for lf in leaves)
                covered = sorted(set().union(*leaves), key=repr) if leaves else []
                disjoint = sum(map(len, leaves)) == len(covered)
                q = quotient_relation(d, which)
                ok = meets and disjoint and q == reduction_relation(d, which) and is_reduction(q)
            except Exception as exc:  # a structural error is a failure of this criterion
                ok = False
                which = f"{which}: {exc}"
            if not ok:
                bad.append(f"{name}/{which}")
    return record(4, "leaf cross-sections", not bad, f"{n} (instance, subset) cases, failures={bad}")


def criterion_5():
    t0 = time.perf_counter()
    bad = {}
    for name, d in corpus().items():
        rep = check_hopfoid(build_hopfoid(d))
        if not rep.ok:
            bad[name] = [e.name for e in rep.failures()]
    dt = time.perf_counter() - t0
    return record(5, "hopfoid axioms", not bad and dt < 60,
                  f"{len(corpus())} instances, failures={bad}, {dt:.2f}s < 60s")


def criterion_6():
    bad = []
    for g in (cyclic_group(2), cyclic_group(3), symmetric_group(3)):
        h, o = build_hopfoid(pair_double(g)), inertia_hopfoid_oracle(g)
        for rel in RELATIONS:
            if getattr(h, rel) != getattr(o, rel):
                bad.append(f"{g.arrows.name}.{rel}")
        if h.base != o.base or h.carrier != o.carrier:
            bad.append(f"{g.arrows.name}.carriers")
    return record(6, "oracle equality", not bad, f"Z2, Z3, S3 x 8 relations, mismatches={bad}")


def criterion_7():
    t0 = time.perf_counter()
    bad = []
    for name, d in corpus().items():
        if not roundtrip_double(d).ok:
            bad.append(f"double:{name}")
        if not roundtrip_hopfoid(hopfoids()[name]).ok:
            bad.append(f"hopfoid:{name}")
    dt = time.perf_counter() - t0
    return record(7, "main correspondence", not bad and dt < 60,
                  f"{len(corpus())} instances both ways, failures={bad}, {dt:.2f}s < 60s")


# mutations: each changes exactly one table entry or one relation pair

def _other(elements, avoid):
    return next(x for x in elements if x not in avoid)


def _swap_groupoid(d, which, g):
    return DoubleGroupoid(d.squares, d.side_v, d.side_h,
                          g if which == "top" else d.top, g if which == "left" else d.left)


def mutate_product(d):
    g = d.left
    key = next(k for k in sorted(g.mul, key=repr) if g.mul[k] not in g.unit_arrows())
    mul = dict(g.mul)
    mul[key] = _other(g.arrows, {g.mul[key]})
    return validate_double(_swap_groupoid(d, "left", Groupoid(g.objects, g.arrows, g.src, g.tgt, g.unit, g.inv, mul)))


def mutate_inverse(d):
    g = d.top
    a = next(a for a in g.arrows if a not in g.unit_arrows()) if len(g.unit_arrows()) < len(g.arrows) else g.arrows.elements[0]
    inv = dict(g.inv)
    inv[a] = _other(g.arrows, {g.inv[a]})
    return validate_double(_swap_groupoid(d, "top", Groupoid(g.objects, g.arrows, g.src, g.tgt, g.unit, inv, g.mul)))


def mutate_unit(d):
    g = d.top
    x = g.objects.elements[0]
    unit = dict(g.unit)
    unit[x] = _other(g.arrows, {g.unit[x]})
    return validate_double(_swap_groupoid(d, "top", Groupoid(g.objects, g.arrows, g.src, g.tgt, unit, g.inv, g.mul)))


def _move_pair(r: Relation):
    x, y = sorted(r.pairs, key=repr)[0]
    return Relation(r.dom, r.cod, (r.pairs - {(x, y)}) | {(x, _other(r.cod, set(r.image(x))))}, check=False)


def mutate_i(d):
    h = build_hopfoid(d)
    return check_hopfoid(h.replace(i=_move_pair(h.i)))


def mutate_star(d):
    h = build_hopfoid(d)
    return check_hopfoid(h.replace(star=_move_pair(h.star)))


def mutate_e(d):
    h = build_hopfoid(d)
    return check_hopfoid(h.replace(e=_move_pair(h.e)))


MUTATIONS = {"product cell": mutate_product, "inverse": mutate_inverse, "unit": mutate_unit,
             "i": mutate_i, "star": mutate_star, "e": mutate_e}


def mutation_targets():
    gs = base_groupoids()
    return {
        "pair_double(Z3)": pair_double(gs["Z3"]),
        "pair_double(S3)": pair_double(gs["S3"]),
        "trivial_double(S3)": trivial_double(gs["S3"]),
        "transpose(pair_double(Pair2))": transpose_double(pair_double(gs["Pair2"])),
    }


def criterion_8():
    silent = []
    caught = {}
    for mname, mutate in MUTATIONS.items():
        for dname, d in mutation_targets().items():
            rep = mutate(d)
            named = [e.name for e in rep.failures() if e.witness not in (None, [], {})]
            if not named:
                silent.append(f"{mname}@{dname}")
            else:
                caught.setdefault(mname, named[0])
    return record(8, "mutation sensitivity", not silent,
                  f"{len(MUTATIONS)} mutations x {len(mutation_targets())} instances, silent={silent}, "
                  f"first catches={caught}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


@pytest.mark.parametrize("crit", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 9)])
def test_criterion(crit):
    assert crit()


def main():
    results = [crit() for crit in CRITERIA]
    return 0 if all(results) else 1


if __name__ == "__main__":
    sys.exit(main())
