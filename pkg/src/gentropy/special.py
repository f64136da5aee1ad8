"""Special-function kernels used by the entropy catalog.

The upper incomplete gamma integral is computed with the classic split:
a regularized power series for x < a + 1 and a Lentz continued fraction
otherwise (cf. Numerical Recipes ch. 6), both run to relative tolerance
1e-12 with a 500-iteration cap.
"""

from __future__ import annotations

from typing import Callable, Sequence

import math

from .errors import ParamOutOfDomain, TruncationCapHit, ValidationError

_GAMMA_RTOL = 1e-12
_GAMMA_MAX_ITER = 500

_SERIES_RTOL = 1e-14
_SERIES_CAP = 200


def _lower_regularized_series(a: float, x: float) -> float:
    """P(a, x) by power series; accurate for x < a + 1."""
    if x == 0.0:
        return 0.0
    term = 1.0 / a
    total = term
    denom = a
    for _ in range(_GAMMA_MAX_ITER):
        denom += 1.0
        term *= x / denom
        total += term
        if abs(term) < abs(total) * _GAMMA_RTOL:
            break
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_regularized_continued_fraction(a: float, x: float) -> float:
    """Q(a, x) by modified Lentz continued fraction; accurate for x >= a + 1."""
    tiny = 1e-300
    b = x + 1.0 - a
    c = 1.0 / tiny
    d = 1.0 / b if b != 0.0 else 1.0 / tiny
    h = d
    for i in range(1, _GAMMA_MAX_ITER + 1):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < tiny:
            d = tiny
        c = b + an / c
        if abs(c) < tiny:
            c = tiny
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _GAMMA_RTOL:
            break
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def upper_incomplete_gamma(a: float, x: float) -> float:
    """The unnormalized tail integral of t**(a-1) * exp(-t) from x to infinity.

    Parameters
    ----------
    a : float
        Shape, strictly positive.
    x : float
        Lower limit, nonnegative (``x = 0`` gives the complete gamma).

    Notes
    -----
    Relative accuracy ~1e-12 over the supported domain; an independent
    quadrature oracle pins this down in the test suite.
    """
    if not (a > 0.0) or not math.isfinite(a):
        raise ParamOutOfDomain(f"shape must be > 0, got {a!r}")
    if not (x >= 0.0) or not math.isfinite(x):
        raise ValidationError(f"lower limit must be finite and >= 0, got {x!r}")
    gamma_a = math.gamma(a) if a < 170.0 else math.exp(math.lgamma(a))
    if x == 0.0:
        return gamma_a
    if x < a + 1.0:
        return gamma_a * (1.0 - _lower_regularized_series(a, x))
    return gamma_a * _upper_regularized_continued_fraction(a, x)


def check_series_coefficients(coeffs: Sequence[float]) -> tuple[float, ...]:
    """Validate the dominance condition a_k > (k+1) * a_{k+1}, a_0 > 0, a_k >= 0.

    A finite list is treated as zero-extended, so the last coefficient only
    needs to be nonnegative.
    """
    cleaned = tuple(float(c) for c in coeffs)
    if len(cleaned) == 0:
        raise ParamOutOfDomain("coefficient list must be nonempty")
    if not cleaned[0] > 0.0:
        raise ParamOutOfDomain(f"leading coefficient must be > 0, got {cleaned[0]!r}")
    if any(c < 0.0 for c in cleaned):
        raise ParamOutOfDomain("coefficients must be nonnegative")
    for k in range(len(cleaned) - 1):
        if not cleaned[k] > (k + 1) * cleaned[k + 1]:
            raise ParamOutOfDomain(
                f"coefficient condition violated at k={k}: "
                f"{cleaned[k]!r} <= {(k + 1)} * {cleaned[k + 1]!r}"
            )
    return cleaned


def universal_group_G(
    coeffs: Sequence[float] | Callable[[int], float], t: float
) -> float:
    """Evaluate G(t) = sum_k a_k * t**(k+1) / (k+1).

    A finite coefficient sequence is summed exactly (it is a polynomial).
    A callable ``k -> a_k`` is treated as an infinite sequence: summation
    stops once ``|term| < 1e-14 * |partial sum|``, with a hard cap of 200
    terms (exceeding the cap raises).
    """
    if callable(coeffs):
        total = 0.0
        power = t  # t**(k+1)
        for k in range(_SERIES_CAP):
            a_k = float(coeffs(k))
            if a_k < 0.0:
                raise ParamOutOfDomain(f"coefficient a_{k} is negative")
            term = a_k * power / (k + 1)
            total += term
            if abs(term) <= _SERIES_RTOL * abs(total) and k > 0:
                return total
            power *= t
        raise TruncationCapHit(
            f"series for G({t!r}) did not converge within {_SERIES_CAP} terms"
        )
    cleaned = check_series_coefficients(coeffs)
    total = 0.0
    power = t
    for k, a_k in enumerate(cleaned):
        total += a_k * power / (k + 1)
        power *= t
    return total


def universal_group_G_prime(
    coeffs: Sequence[float] | Callable[[int], float], t: float
) -> float:
    """Evaluate G'(t) = sum_k a_k * t**k (same truncation rules as G)."""
    if callable(coeffs):
        total = 0.0
        power = 1.0
        for k in range(_SERIES_CAP):
            term = float(coeffs(k)) * power
            total += term
            if abs(term) <= _SERIES_RTOL * abs(total) and k > 0:
                return total
            power *= t
        raise TruncationCapHit(
            f"series for G'({t!r}) did not converge within {_SERIES_CAP} terms"
        )
    cleaned = check_series_coefficients(coeffs)
    total = 0.0
    power = 1.0
    for k, a_k in enumerate(cleaned):
        total += a_k * power
        power *= t
    return total
