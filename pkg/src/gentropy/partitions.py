"""Set partitions of {0..n-1} and the refinement (merging) order.

A partition here is a "way of aggregating states": coarse-graining a
distribution sums its entries over each block.  Partition B is *coarser*
than A (``is_refinement(A, B)`` is true) when B can be produced by merging
blocks of A; walking down that order is exactly repeated state aggregation.

Canonical form: blocks sorted by their minimum element, elements ascending.
That makes equality, hashing, enumeration order, and serialization
deterministic.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import json

import numpy as np

from .errors import DimensionMismatch, TooSmall, TooLarge, ValidationError

ENUMERATION_LIMIT = 12  # Bell(12) = 4_213_597; beyond this exhaustive work explodes


class Partition:
    """An ordered set partition of the ground set {0..ground_size-1}."""

    __slots__ = ("_blocks", "_ground_size")

    def __init__(self, blocks: Iterable[Iterable[int]], ground_size: int):
        cleaned = [tuple(sorted(int(x) for x in block)) for block in blocks]
        if any(len(block) == 0 for block in cleaned):
            raise ValidationError("blocks must be nonempty")
        cleaned.sort(key=lambda block: block[0])
        flat = [x for block in cleaned for x in block]
        if len(flat) != len(set(flat)):
            raise ValidationError("blocks must be pairwise disjoint")
        if sorted(flat) != list(range(ground_size)):
            raise ValidationError(
                f"blocks must cover exactly 0..{ground_size - 1}"
            )
        self._blocks = tuple(cleaned)
        self._ground_size = ground_size

    @classmethod
    def _raw(cls, blocks: tuple[tuple[int, ...], ...], ground_size: int) -> "Partition":
        # Fast path for internally generated, already-canonical blocks.
        self = object.__new__(cls)
        object.__setattr__(self, "_blocks", blocks)
        object.__setattr__(self, "_ground_size", ground_size)
        return self

    def __setattr__(self, name, value):  # immutability guard for __slots__ path
        if hasattr(self, "_ground_size"):
            raise AttributeError("Partition is immutable")
        object.__setattr__(self, name, value)

    @property
    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return self._blocks

    @property
    def ground_size(self) -> int:
        return self._ground_size

    @property
    def k(self) -> int:
        """Number of blocks."""
        return len(self._blocks)

    def is_identity(self) -> bool:
        """True when every block is a singleton (nothing aggregated)."""
        return len(self._blocks) == self._ground_size

    @classmethod
    def identity(cls, n: int) -> "Partition":
        return cls._raw(tuple((i,) for i in range(n)), n)

    @classmethod
    def total(cls, n: int) -> "Partition":
        return cls._raw((tuple(range(n)),), n)

    def block_of(self) -> list[int]:
        """Map each element to the index of its block."""
        owner = [0] * self._ground_size
        for b_index, block in enumerate(self._blocks):
            for x in block:
                owner[x] = b_index
        return owner

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return (
            self._ground_size == other._ground_size
            and self._blocks == other._blocks
        )

    def __hash__(self) -> int:
        return hash((self._ground_size, self._blocks))

    def __repr__(self) -> str:
        inner = ", ".join("{" + ", ".join(map(str, b)) + "}" for b in self._blocks)
        return f"Partition[{inner}]"

    # -- serialization ---------------------------------------------------
    def to_json(self) -> str:
        """Serialize as ``{"blocks": [[..], ..]}`` in canonical order."""
        return json.dumps({"blocks": [list(b) for b in self._blocks]})

    @classmethod
    def from_json(cls, text: str, ground_size: int | None = None) -> "Partition":
        data = json.loads(text)
        if not isinstance(data, dict) or "blocks" not in data:
            raise ValidationError('partition JSON must be {"blocks": [[..], ..]}')
        blocks = data["blocks"]
        if ground_size is None:
            ground_size = sum(len(b) for b in blocks)
        return cls(blocks, ground_size)


def is_refinement(finer: Partition, coarser: Partition) -> bool:
    """True when ``coarser`` can be produced by merging blocks of ``finer``.

    Equivalently: every block of ``finer`` lies inside exactly one block of
    ``coarser``.  The relation is reflexive and transitive.
    """
    if finer.ground_size != coarser.ground_size:
        raise DimensionMismatch(
            f"ground sizes differ: {finer.ground_size} vs {coarser.ground_size}"
        )
    owner = coarser.block_of()
    for block in finer.blocks:
        first = owner[block[0]]
        if any(owner[x] != first for x in block[1:]):
            return False
    return True


def quotient_partition(finer: Partition, coarser: Partition) -> Partition:
    """The partition of ``finer``'s block indices induced by ``coarser``.

    Aggregating by ``finer`` and then by the quotient equals aggregating by
    ``coarser`` directly.  Requires ``is_refinement(finer, coarser)``.
    """
    if not is_refinement(finer, coarser):
        raise ValidationError("quotient requires the first partition to refine the second")
    owner = coarser.block_of()
    groups: dict[int, list[int]] = {}
    for b_index, block in enumerate(finer.blocks):
        groups.setdefault(owner[block[0]], []).append(b_index)
    return Partition(groups.values(), finer.k)


def bell_number(n: int) -> int:
    """Number of set partitions of an n-set (Bell triangle recurrence)."""
    if n < 0:
        raise ValidationError("n must be >= 0")
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for value in row:
            nxt.append(nxt[-1] + value)
        row = nxt
    return row[0]


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """Yield every partition of {0..n-1} exactly once, in canonical order.

    The order is lexicographic in the restricted-growth encoding (element i
    gets the label of its block, labels appear in first-use order), which
    coincides with canonical block form.  Guarded at n <= 12.
    """
    if n < 1:
        raise ValidationError(f"n must be >= 1, got {n}")
    if n > ENUMERATION_LIMIT:
        raise TooLarge(
            f"exhaustive enumeration is limited to n <= {ENUMERATION_LIMIT} "
            f"(Bell({n}) = {bell_number(n)})"
        )
    labels = [0] * n

    def rec(i: int, used: int) -> Iterator[Partition]:
        if i == n:
            blocks: list[list[int]] = [[] for _ in range(used)]
            for x, lab in enumerate(labels):
                blocks[lab].append(x)
            yield Partition._raw(tuple(tuple(b) for b in blocks), n)
            return
        for label in range(used + 1):
            labels[i] = label
            yield from rec(i + 1, used + (1 if label == used else 0))

    yield from rec(1, 1)


def _merge_random_blocks(blocks: list[list[int]], rng: np.random.Generator) -> None:
    i, j = rng.choice(len(blocks), size=2, replace=False)
    i, j = (int(i), int(j)) if i < j else (int(j), int(i))
    blocks[i] = blocks[i] + blocks[j]
    del blocks[j]


def _random_refinement_pair(
    n: int, rng: np.random.Generator
) -> tuple[Partition, Partition]:
    k1 = int(rng.integers(3, n + 1))
    k2 = int(rng.integers(2, k1))
    blocks = [[i] for i in range(n)]
    while len(blocks) > k1:
        _merge_random_blocks(blocks, rng)
    finer = Partition(blocks, n)
    while len(blocks) > k2:
        _merge_random_blocks(blocks, rng)
    coarser = Partition(blocks, n)
    return finer, coarser


def random_refinement_pair(n: int, rng_seed: int) -> tuple[Partition, Partition]:
    """Sample a strict refinement pair (A, B): B coarser, 2 <= k_B < k_A <= n.

    Sampling merges uniformly random block pairs starting from the singleton
    partition, first down to a random target k_A in [3, n], then further to a
    random k_B in [2, k_A - 1].  This covers the whole order but is *not*
    uniform over it; exhaustive enumeration exists for certainty at small n.
    """
    if n < 3:
        raise TooSmall(f"refinement pairs with 2 <= k_B < k_A need n >= 3, got {n}")
    rng = np.random.default_rng(rng_seed)
    return _random_refinement_pair(n, rng)
