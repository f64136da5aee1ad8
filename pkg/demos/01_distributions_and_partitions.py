"""
Distributions, partitions, and state aggregation
================================================

The core objects: a probability vector on {0..n-1}, a partition of those
states, and the coarse-graining operation that sums probabilities over each
block.  Partitions are ordered by refinement; walking down that order is
repeated state aggregation.
"""

import numpy as np

from gentropy import (
    FiniteDistribution,
    Partition,
    bell_number,
    coarse_grain,
    enumerate_partitions,
    from_weights,
    is_refinement,
    merge_pair,
    quotient_partition,
    random_refinement_pair,
    sample_dirichlet_uniform,
)

# -- build distributions -----------------------------------------------------
p = from_weights([2, 3, 5])  # explicit normalization
print("normalized weights:", p.probs)  # [0.2 0.3 0.5]

# constructors validate instead of silently renormalizing
try:
    FiniteDistribution([0.5, 0.4])
except Exception as exc:
    print("rejected:", exc)

# -- aggregate states --------------------------------------------------------
merge_first_two = Partition([[0, 1], [2]], 3)
print("aggregated:", coarse_grain(p, merge_first_two).probs)  # [0.5 0.5]
print("pairwise merge:", merge_pair(p, 0, 1).probs)           # same thing

# -- the refinement order ----------------------------------------------------
identity = Partition.identity(3)
print("identity refines the merge:", is_refinement(identity, merge_first_two))
print("merge does not refine a different merge:",
      is_refinement(merge_first_two, Partition([[0], [1, 2]], 3)))

# aggregation composes along refinement: grain by A, then by the induced
# quotient, equals graining by B directly
A = Partition([[0, 1], [2], [3, 4]], 5)
B = Partition([[0, 1, 2], [3, 4]], 5)
q5 = sample_dirichlet_uniform(5, rng_seed=1)
two_step = coarse_grain(coarse_grain(q5, A), quotient_partition(A, B))
one_step = coarse_grain(q5, B)
print("two-step equals one-step:", np.allclose(two_step.probs, one_step.probs, atol=1e-15))

# -- enumerate the whole partition order at small n ---------------------------
for n in (1, 3, 6):
    count = sum(1 for _ in enumerate_partitions(n))
    print(f"partitions of an {n}-set: {count} (Bell number {bell_number(n)})")

# -- random refinement pairs drive the verification campaigns ----------------
finer, coarser = random_refinement_pair(8, rng_seed=7)
print("sampled pair block counts:", finer.k, ">", coarser.k,
      "| refines:", is_refinement(finer, coarser))
