"""Numerical certificates for merge-monotone structure.

Three grid-based checks certify (never prove) that a functional's per-state
component has the shape that makes state aggregation entropy-decreasing:

* :func:`check_slope_condition` - the component derivative never increases
  when the argument grows by a merge: phi'(x) >= phi'(x + p) on
  0 < x <= 0.5, 0 <= p <= 1 - x, together with phi(0) = 0.
* :func:`check_concavity` - the stronger sufficient condition phi'' <= 0.
* :func:`check_outer_map_pairing` - for wrapped forms h(sum phi), a
  consistent sign pattern: h' > 0 with phi'' < 0, or h' < 0 with phi'' > 0.

A grid certificate can in principle miss a violation between grid points;
densities are configurable and every certificate records its grid so a run
can be replayed byte-for-byte.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import json
import math

import numpy as np

from .catalog import (
    EntropySpec,
    evaluate,
    matched_transform_target,
    phi_component,
    transform_between,
)
from .distributions import FiniteDistribution, _dirichlet_interior
from .errors import NoPhiDecomposition, UnsupportedPair, ValidationError

SLOPE_TOLERANCE = 1e-9
ZERO_TOLERANCE = 1e-12
CONCAVITY_RTOL = 1e-7
_BREAKPOINT_HALO = 1e-4
_FD_STEP = 1e-6


@dataclass(frozen=True)
class Witness:
    """A grid point exhibiting the worst violation found."""

    x: float
    p: float
    slope_at_x: float
    slope_at_x_plus_p: float


@dataclass(frozen=True)
class GridCertificate:
    """Outcome of one grid certification run."""

    spec: EntropySpec
    check: str
    grid_points: int
    max_violation: float
    witness: Witness | None
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.label(),
            "check": self.check,
            "grid_points": self.grid_points,
            "max_violation": self.max_violation,
            "witness": None
            if self.witness is None
            else {
                "x": self.witness.x,
                "p": self.witness.p,
                "slope_at_x": self.witness.slope_at_x,
                "slope_at_x_plus_p": self.witness.slope_at_x_plus_p,
            },
            "passed": self.passed,
            "detail": self.detail,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)


def _slope_function(spec: EntropySpec):
    """Vectorized phi'; closed form when available, else central differences."""
    f = spec.functional
    if f.phi_prime is not None:
        return f.phi_prime

    def fd(t: np.ndarray) -> np.ndarray:
        h = _FD_STEP * np.maximum(t, 1e-3)
        return (f.phi(t + h, 2) - f.phi(t - h, 2)) / (2.0 * h)

    return fd


def _component_zero_report(spec: EntropySpec) -> tuple[bool, float]:
    """Check phi(0) = 0, or dimension-consistency for n-dependent components."""
    f = spec.functional
    if f.depends_on_n:
        # sum over a full support of zeros must not depend on the dimension
        totals = [n * phi_component(spec, 0.0, n) for n in range(2, 13)]
        deviation = max(totals) - min(totals)
        return deviation <= ZERO_TOLERANCE, deviation
    try:
        value = phi_component(spec, 0.0)
    except Exception:
        return False, math.inf
    return abs(value) <= ZERO_TOLERANCE, abs(value)


def _mask_breakpoints(values: np.ndarray, breakpoints: Sequence[float]) -> np.ndarray:
    keep = np.ones(values.shape, dtype=bool)
    for b in breakpoints:
        keep &= np.abs(values - b) > _BREAKPOINT_HALO
    return keep


def check_slope_condition(spec: EntropySpec, grid_density: int = 200) -> GridCertificate:
    """Certify phi'(x) >= phi'(x+p) over the merge triangle, plus phi(0) = 0.

    The reported ``max_violation`` is the largest phi'(x+p) - phi'(x) seen on
    the grid (positive values are violations); a failed certificate carries
    the witnessing point and both slopes.
    """
    f = spec.functional
    if f.phi is None:
        raise NoPhiDecomposition(f"{spec.id} exposes no per-state component")
    g = int(grid_density)
    if g < 10:
        raise ValidationError(f"grid_density must be >= 10, got {grid_density!r}")

    xs = 0.5 * np.arange(1, g + 1) / g
    base = []
    shifted = []
    for x in xs:
        ps = (1.0 - x) * np.arange(0, g + 1) / g
        base.append(np.full(ps.size, x))
        shifted.append(x + ps)
    base_arr = np.concatenate(base)
    shift_arr = np.concatenate(shifted)
    keep = _mask_breakpoints(base_arr, f.breakpoints) & _mask_breakpoints(
        shift_arr, f.breakpoints
    )
    base_arr = base_arr[keep]
    shift_arr = np.minimum(shift_arr[keep], 1.0)

    slope = _slope_function(spec)
    with np.errstate(divide="ignore", over="ignore"):
        gaps = slope(shift_arr) - slope(base_arr)
    gaps = np.where(np.isnan(gaps), -np.inf, gaps)
    worst = int(np.argmax(gaps))
    max_gap = float(gaps[worst])

    zero_ok, zero_dev = _component_zero_report(spec)
    passed = max_gap <= SLOPE_TOLERANCE and zero_ok
    witness = None
    if not passed:
        if max_gap > SLOPE_TOLERANCE:
            x = float(base_arr[worst])
            xp = float(shift_arr[worst])
            witness = Witness(
                x=x,
                p=xp - x,
                slope_at_x=float(slope(np.array([x]))[0]),
                slope_at_x_plus_p=float(slope(np.array([xp]))[0]),
            )
        else:
            witness = Witness(x=0.0, p=0.0, slope_at_x=zero_dev, slope_at_x_plus_p=0.0)
    return GridCertificate(
        spec=spec,
        check="slope_condition",
        grid_points=int(base_arr.size),
        max_violation=max(max_gap, 0.0 if zero_ok else zero_dev),
        witness=witness,
        passed=passed,
        detail={
            "grid_density": g,
            "tolerance": SLOPE_TOLERANCE,
            "component_zero_ok": zero_ok,
            "component_zero_deviation": zero_dev,
        },
    )


def check_concavity(spec: EntropySpec, grid_density: int = 200) -> GridCertificate:
    """Certify phi'' <= 0 by second differences on a uniform grid of (0, 1).

    Passing this implies passing :func:`check_slope_condition`; the converse
    does not hold (the slope condition only constrains increments).
    Stencils are allowed to straddle breakpoints of piecewise components:
    an upward slope jump is precisely what a positive second difference
    detects.
    """
    f = spec.functional
    if f.phi is None:
        raise NoPhiDecomposition(f"{spec.id} exposes no per-state component")
    g = int(grid_density)
    if g < 10:
        raise ValidationError(f"grid_density must be >= 10, got {grid_density!r}")

    h = 1.0 / (g + 1)
    ts = h * np.arange(0, g + 2)
    values = np.empty(ts.size)
    start = 0
    if f.depends_on_n or f.phi_at_zero is None:
        n_arg = 2 if f.depends_on_n else None
        try:
            values[0] = float(f.phi(np.array([0.0]), n_arg)[0])
        except Exception:
            start = 1  # component undefined at 0; check the interior only
    else:
        values[0] = f.phi_at_zero
    values[1:] = f.phi(ts[1:], 2)

    second = values[start:-2] + values[start + 2 :] - 2.0 * values[start + 1 : -1]
    scale = max(1.0, float(np.max(np.abs(values[start:]))))
    worst = int(np.argmax(second))
    max_second = float(second[worst])
    passed = max_second <= CONCAVITY_RTOL * scale
    witness = None
    if not passed:
        x = float(ts[start + 1 + worst])
        witness = Witness(
            x=x, p=h, slope_at_x=max_second, slope_at_x_plus_p=CONCAVITY_RTOL * scale
        )
    return GridCertificate(
        spec=spec,
        check="concavity",
        grid_points=int(second.size),
        max_violation=max_second,
        witness=witness,
        passed=passed,
        detail={"grid_density": g, "step": h, "scale": scale},
    )


def _component_sum_bracket(spec: EntropySpec) -> tuple[float, float]:
    """Bracket the reachable range of sum_i phi(p_i) over n = 2..12.

    Uses the uniform and a near-degenerate distribution at each dimension;
    for the wrapped forms in the catalog the sum is monotone between those
    extremes.
    """
    f = spec.functional
    eps = 1e-6
    sums = []
    for n in range(2, 13):
        uniform = np.full(n, 1.0 / n)
        spiked = np.full(n, eps)
        spiked[0] = 1.0 - (n - 1) * eps
        for arr in (uniform, spiked):
            sums.append(float(np.sum(f.phi(arr, n))))
    return min(sums), max(sums)


def check_outer_map_pairing(spec: EntropySpec, grid_density: int = 200) -> GridCertificate:
    """Certify a consistent (h', phi'') sign pattern for wrapped sum forms.

    Samples h' over the reachable range of the inner sum and phi'' (by second
    differences) over (0, 1); passes when either h' > 0 with phi'' < 0
    everywhere sampled, or h' < 0 with phi'' > 0 everywhere sampled.  A
    functional without an explicit outer map is treated as wrapped in the
    identity (h' = 1), so the check degenerates to a concavity test there.
    """
    f = spec.functional
    if f.phi is None:
        raise NoPhiDecomposition(f"{spec.id} exposes no per-state component")
    h_prime = f.h_prime if f.h_prime is not None else (lambda y: 1.0)
    g = int(grid_density)
    lo, hi = _component_sum_bracket(spec)
    ys = np.linspace(lo, hi, g)
    h_slopes = np.array([h_prime(float(y)) for y in ys])

    step = 1.0 / (g + 1)
    xs = step * np.arange(1, g + 1)
    inner = xs[(xs - step > 0.0) & (xs + step < 1.0)]
    second = (
        f.phi(inner - step, 2) + f.phi(inner + step, 2) - 2.0 * f.phi(inner, 2)
    ) / step**2

    tol = 1e-12
    pattern_up = bool(np.all(h_slopes > 0.0) and np.all(second < tol))
    pattern_down = bool(np.all(h_slopes < 0.0) and np.all(second > -tol))
    passed = pattern_up or pattern_down
    witness = None
    max_violation = 0.0
    if not passed:
        # report the least sign-consistent pair of samples
        idx_h = int(np.argmin(np.abs(h_slopes)))
        idx_p = int(np.argmax(second))
        witness = Witness(
            x=float(inner[idx_p]),
            p=0.0,
            slope_at_x=float(second[idx_p]),
            slope_at_x_plus_p=float(h_slopes[idx_h]),
        )
        max_violation = float(max(np.max(second), 0.0))
    return GridCertificate(
        spec=spec,
        check="outer_map_pairing",
        grid_points=int(h_slopes.size + second.size),
        max_violation=max_violation,
        witness=witness,
        passed=passed,
        detail={
            "grid_density": g,
            "sum_range": [lo, hi],
            "pattern": "h_increasing_phi_concave"
            if pattern_up
            else ("h_decreasing_phi_convex" if pattern_down else "inconsistent"),
        },
    )


@dataclass(frozen=True)
class TransformConsistencyReport:
    """Outcome of the ordering-consistency check for a transform pair."""

    source: EntropySpec
    target: EntropySpec
    samples: int
    increasing_ok: bool
    ordering_ok: bool
    compared_pairs: int
    max_transform_residual: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "source": self.source.label(),
            "target": self.target.label(),
            "samples": self.samples,
            "increasing_ok": self.increasing_ok,
            "ordering_ok": self.ordering_ok,
            "compared_pairs": self.compared_pairs,
            "max_transform_residual": self.max_transform_residual,
            "passed": self.passed,
        }


def check_transform_consistency(
    source: EntropySpec,
    target: EntropySpec,
    samples: int = 1000,
    rng_seed: int = 0,
) -> TransformConsistencyReport:
    """Verify a registered transform is increasing and order-preserving.

    Checks, over sampled distribution pairs: (a) the transform applied to the
    source value reproduces the target value; (b) the transform is strictly
    increasing across the sampled value range; (c) whichever of two
    distributions the source ranks higher, the target ranks higher too
    (differences below 1e-8 are not compared).
    """
    expected_target = matched_transform_target(source, target.id)
    if expected_target != target:
        raise UnsupportedPair(
            f"target parameters {target.label()} do not match the transform of "
            f"{source.label()} (expected {expected_target.label()})"
        )
    rng = np.random.default_rng(rng_seed)
    values = []
    max_residual = 0.0
    ordering_ok = True
    compared = 0
    for index in range(samples):
        n = 3 + index % 6
        p = FiniteDistribution(_dirichlet_interior(n, rng, 1e-9))
        q = FiniteDistribution(_dirichlet_interior(n, rng, 1e-9))
        sp, sq = evaluate(source, p), evaluate(source, q)
        tp, tq = evaluate(target, p), evaluate(target, q)
        max_residual = max(
            max_residual,
            abs(transform_between(source, target.id, sp) - tp),
            abs(transform_between(source, target.id, sq) - tq),
        )
        if abs(sp - sq) > 1e-8:
            compared += 1
            if (sp - sq) * (tp - tq) <= 0.0:
                ordering_ok = False
        values.extend((sp, sq))

    ordered = sorted(values)
    increasing_ok = True
    previous = None
    for value in ordered:
        if previous is not None and value - previous > 1e-12:
            if not (
                transform_between(source, target.id, value)
                > transform_between(source, target.id, previous)
            ):
                increasing_ok = False
        previous = value

    passed = increasing_ok and ordering_ok and max_residual <= 1e-10
    return TransformConsistencyReport(
        source=source,
        target=target,
        samples=samples,
        increasing_ok=increasing_ok,
        ordering_ok=ordering_ok,
        compared_pairs=compared,
        max_transform_residual=max_residual,
        passed=passed,
    )
