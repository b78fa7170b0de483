"""Finite double groupoids, hopfoids, and the correspondence between them."""

from relhopf.doublegpd import (
    DoubleGroupoid,
    core_groupoid_square,
    core_set,
    leaf_partition,
    reduction_relation,
    transpose_double,
    validate_double,
)
from relhopf.generators import CorpusSpec, pair_double, small_corpus, trivial_double
from relhopf.groupoid import Groupoid, StarMonoid, from_star_monoid, to_star_monoid, validate_groupoid
from relhopf.hopfoid import Hopfoid, build_double, build_hopfoid, check_hopfoid
from relhopf.relcat import PT, Carrier, Relation, compose, identity, tensor, transpose

__version__ = "0.1.0"
