"""Partition canonical form, refinement order, enumeration, and sampling."""

import math

import numpy as np
import pytest

from gentropy import (
    Partition,
    bell_number,
    enumerate_partitions,
    is_refinement,
    quotient_partition,
    random_refinement_pair,
)
from gentropy.errors import DimensionMismatch, TooLarge, TooSmall, ValidationError
from gentropy.partitions import _random_refinement_pair


def independent_bell(n):
    """Bell numbers by the binomial-sum recurrence (not the library's triangle)."""
    bells = [1]
    for m in range(n):
        bells.append(sum(math.comb(m, k) * bells[k] for k in range(m + 1)))
    return bells[n]


def test_canonical_form_sorts_blocks():
    part = Partition([[2], [1, 0]], 3)
    assert part.blocks == ((0, 1), (2,))


def test_partition_validation():
    with pytest.raises(ValidationError):
        Partition([[0, 1], [1, 2]], 3)  # overlap
    with pytest.raises(ValidationError):
        Partition([[0], [2]], 3)  # hole
    with pytest.raises(ValidationError):
        Partition([[0], []], 1)  # empty block


def test_partition_immutable_and_hashable():
    part = Partition([[0, 1], [2]], 3)
    with pytest.raises(AttributeError):
        part._blocks = ()
    assert hash(part) == hash(Partition([[2], [0, 1]], 3))


def test_refinement_examples():
    singletons = Partition.identity(3)
    merged = Partition([[0, 1], [2]], 3)
    assert is_refinement(singletons, merged)
    assert is_refinement(merged, merged)
    assert not is_refinement(merged, Partition([[0], [1, 2]], 3))


def test_refinement_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        is_refinement(Partition.identity(3), Partition.identity(4))


def test_refinement_reflexive_transitive_exhaustive_n6():
    parts = list(enumerate_partitions(6))
    relation = np.zeros((len(parts), len(parts)), dtype=bool)
    for i, a in enumerate(parts):
        for j, b in enumerate(parts):
            relation[i, j] = is_refinement(a, b)
    assert relation.diagonal().all()  # reflexive
    closure = (relation.astype(int) @ relation.astype(int)) > 0
    assert not np.any(closure & ~relation)  # transitive


def test_quotient_composition():
    finer = Partition([[0, 1], [2], [3, 4]], 5)
    coarser = Partition([[0, 1, 2], [3, 4]], 5)
    quotient = quotient_partition(finer, coarser)
    assert quotient.blocks == ((0, 1), (2,))
    with pytest.raises(ValidationError):
        quotient_partition(coarser, finer)


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 5), (4, 15), (6, 203)])
def test_enumeration_counts_small(n, count):
    parts = list(enumerate_partitions(n))
    assert len(parts) == count
    assert len(set(parts)) == count  # exactly once each


def test_enumeration_matches_bell_up_to_12():
    for n in range(1, 13):
        expected = independent_bell(n)
        assert bell_number(n) == expected
        if n <= 10:
            assert sum(1 for _ in enumerate_partitions(n)) == expected


@pytest.mark.slow
def test_enumeration_matches_bell_11_12():
    for n in (11, 12):
        assert sum(1 for _ in enumerate_partitions(n)) == independent_bell(n)


def test_enumeration_guard():
    with pytest.raises(TooLarge):
        next(enumerate_partitions(13))


def test_enumeration_canonical_order_deterministic():
    first = [p.blocks for p in enumerate_partitions(5)]
    second = [p.blocks for p in enumerate_partitions(5)]
    assert first == second
    assert first[0] == (tuple(range(5)),)  # all merged comes first
    assert first[-1] == tuple((i,) for i in range(5))  # identity comes last


def test_random_refinement_pair_contract():
    for seed in range(200):
        finer, coarser = random_refinement_pair(8, seed)
        assert is_refinement(finer, coarser)
        assert 2 <= coarser.k < finer.k <= 8


def test_random_refinement_pair_n3_shape():
    finer, coarser = random_refinement_pair(3, 5)
    assert finer == Partition.identity(3)
    assert coarser.k == 2


def test_random_refinement_pair_bounds_sweep():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        finer, coarser = _random_refinement_pair(8, rng)
        assert 2 <= coarser.k < finer.k <= 8


def test_random_refinement_pair_too_small():
    with pytest.raises(TooSmall):
        random_refinement_pair(2, 0)


def test_partition_json_round_trip():
    part = Partition([[0, 3], [1], [2, 4]], 5)
    assert Partition.from_json(part.to_json()) == part
