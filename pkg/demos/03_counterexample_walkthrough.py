"""
The built-in pathological functional
====================================

``counterexample_HE`` sums a piecewise-linear component over the
distribution.  It is positive, symmetric, continuous, and unchanged by
zero-probability states -- yet merging two states can *raise* its value,
and the uniform distribution is not its maximizer.  The failure is exactly
the upward slope jump of the component at 0.25: merging masses can move
probability onto a steeper branch.

This script reproduces the pinned values, both violated inequalities, and
dumps the component curve as CSV (the same data `gentropy counterexample
--curve` emits).
"""

import numpy as np

from gentropy import (
    EntropySpec,
    FiniteDistribution,
    check_slope_condition,
    counterexample_suite,
    evaluate,
    phi_component,
    phi_prime,
)

he = EntropySpec("counterexample_HE")

# -- the four pinned values ----------------------------------------------------
for probs in [(0.2, 0.3, 0.5), (0.5, 0.5), (0.25,) * 4, (0.2, 0.25, 0.25, 0.3)]:
    print(f"H{probs} = {evaluate(he, FiniteDistribution(probs))!r}")

# -- violation 1: aggregation increases the value -------------------------------
fine = evaluate(he, FiniteDistribution([0.2, 0.3, 0.5]))
coarse = evaluate(he, FiniteDistribution([0.5, 0.5]))
print(f"\nmerging {{0,1}}: {fine} -> {coarse}  (aggregation RAISED the value)")

# -- violation 2: the uniform is beaten ------------------------------------------
print(
    "uniform 4 beaten:",
    evaluate(he, FiniteDistribution([0.25] * 4)),
    "<",
    evaluate(he, FiniteDistribution([0.2, 0.25, 0.25, 0.3])),
)

# -- the mechanism: slopes 1 then 2 across the first kink ------------------------
print("\ncomponent slope on (0, 0.25):  ", phi_prime(he, 0.1))
print("component slope on (0.25, 0.5):", phi_prime(he, 0.3))
cert = check_slope_condition(he, grid_density=200)
print("slope certificate:", "passed" if cert.passed else "FAILED",
      "| witness:", cert.witness)

# -- the whole packaged suite ----------------------------------------------------
report = counterexample_suite()
print("\nsuite reproduces documented behavior:", report.passed)

# -- component curve samples (what Figure-style plots are drawn from) ------------
xs = np.linspace(0.0, 1.0, 41)
print("\nx,phi")
for x in xs:
    print(f"{float(x):.4f},{phi_component(he, float(x)):.6f}")
