import pytest

from relhopf.doublegpd import core_set, validate_double
from relhopf.generators import (
    CorpusSpec,
    TableError,
    cyclic_group,
    disjoint_union,
    group_from_table,
    groupoid_corpus,
    pair_double,
    small_corpus,
    symmetric_group,
    trivial_double,
    trivial_groupoid,
)
from relhopf.groupoid import validate_groupoid


def test_group_from_table():
    g = group_from_table("Z2", [[0, 1], [1, 0]])
    assert len(g.arrows) == 2 and validate_groupoid(g).ok
    with pytest.raises(TableError) as info:
        group_from_table("bad", [[0, 0], [1, 0]])
    assert info.value.axiom in ("associativity", "identity", "inverses")
    with pytest.raises(TableError, match="closure"):
        group_from_table("open", {("a", "a"): "b"}, ["a"])


def test_symmetric_group_is_noncommutative():
    s3 = symmetric_group(3)
    assert len(s3.arrows) == 6
    assert any(s3.mul[a, b] != s3.mul[b, a] for a in s3.arrows for b in s3.arrows)


def test_trivial_double_shapes():
    assert len(trivial_double(trivial_groupoid(["p"])).squares) == 1
    d = trivial_double(cyclic_group(2))
    assert len(d.squares) == 2 and len(core_set(d)) == 1


def test_pair_double_shapes():
    d = pair_double(cyclic_group(2))
    assert len(d.squares) == 4
    rep = validate_double(d)
    assert rep["double source surjective"].passed


def test_corpus_contents(dcorpus):
    assert "pair_double(S3)" in dcorpus
    assert len(dcorpus["pair_double(S3)"].squares) == 36
    assert all(len(d.squares) <= 36 for d in dcorpus.values())
    bases = {len(d.side_v.objects) for d in dcorpus.values()}
    assert 1 in bases and max(bases) > 1


def test_corpus_members_valid(dcorpus):
    for name, d in dcorpus.items():
        assert validate_double(d).ok, name


def test_corpus_deterministic():
    a = small_corpus(CorpusSpec(max_arrows=9, seed=3))
    b = small_corpus(CorpusSpec(max_arrows=9, seed=3))
    assert list(a) == list(b) and a == b
    assert list(groupoid_corpus(CorpusSpec(seed=5))) == list(groupoid_corpus(CorpusSpec(seed=5)))


def test_corpus_families():
    only_trivial = small_corpus(CorpusSpec(max_arrows=9, families=("trivial", "group")))
    assert all(k.startswith("trivial_double") for k in only_trivial)
    assert not any("+" in k for k in only_trivial)


def test_spec_validation():
    with pytest.raises(ValueError):
        CorpusSpec(max_arrows=0)


def test_disjoint_union_valid():
    g = disjoint_union(cyclic_group(2), trivial_groupoid(["p"], "pt"))
    assert validate_groupoid(g).ok and len(g.objects) == 2
