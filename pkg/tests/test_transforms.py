"""Value transforms between monotonically-related functionals."""

import math

import numpy as np
import pytest

from gentropy import (
    EntropySpec,
    FiniteDistribution,
    TRANSFORM_PAIRS,
    check_transform_consistency,
    evaluate,
    matched_transform_target,
    transform_between,
)
from gentropy.errors import DomainViolation, UnsupportedPair


def test_tsallis_to_renyi_pinned():
    src = EntropySpec("tsallis", q=2.0)
    assert transform_between(src, "renyi", 0.5) == pytest.approx(
        math.log(2), abs=1e-14
    )


def test_transforms_fix_zero():
    for source_id, target_id in TRANSFORM_PAIRS:
        source = EntropySpec(source_id, q=1.5)
        assert transform_between(source, target_id, 0.0) == pytest.approx(
            0.0, abs=1e-15
        )
        target = matched_transform_target(source, target_id)
        back = transform_between(target, source_id, 0.0)
        assert back == pytest.approx(0.0, abs=1e-15)


def test_transform_round_trips():
    rng = np.random.default_rng(2)
    for source_id, target_id in TRANSFORM_PAIRS:
        for q in (0.5, 1.5):
            source = EntropySpec(source_id, q=q)
            target = matched_transform_target(source, target_id)
            for _ in range(50):
                # stay inside every pair's domain: q = 1.5 caps values at 2
                value = float(rng.uniform(0.0, 1.4))
                there = transform_between(source, target_id, value)
                back = transform_between(target, source_id, there)
                assert back == pytest.approx(value, rel=1e-12, abs=1e-12)


def test_renyi_tsallis_identity_thousand_cases():
    """Residual of the log transform against direct evaluation, 10^3 cases."""
    rng = np.random.default_rng(4)
    worst = 0.0
    for index in range(1000):
        q = float(rng.uniform(0.1, 3.0))
        if abs(q - 1.0) < 1e-3:
            q = 1.5
        n = 2 + index % 6
        dist = FiniteDistribution(rng.dirichlet(np.ones(n)))
        tsallis = EntropySpec("tsallis", q=q)
        renyi = EntropySpec("renyi", q=q)
        mapped = transform_between(tsallis, "renyi", evaluate(tsallis, dist))
        worst = max(worst, abs(mapped - evaluate(renyi, dist)))
    assert worst <= 1e-10


def test_mathai_star_transform_cross_check():
    src = EntropySpec("mathai_Mq", q=1.5)
    dist = FiniteDistribution([0.5, 0.5])
    value = evaluate(src, dist)
    expected = math.log(1.0 + 0.5 * value) / 0.5
    assert transform_between(src, "mathai_Mq_star", value) == pytest.approx(
        expected, abs=1e-14
    )
    assert evaluate(EntropySpec("mathai_Mq_star", q=1.5), dist) == pytest.approx(
        expected, abs=1e-12
    )


def test_transform_domain_violation():
    src = EntropySpec("tsallis", q=3.0)
    with pytest.raises(DomainViolation):
        transform_between(src, "renyi", 1.0)  # 1 + (1-3)*1 <= 0


def test_unsupported_pairs():
    with pytest.raises(UnsupportedPair):
        transform_between(EntropySpec("shannon"), "renyi", 1.0)
    with pytest.raises(UnsupportedPair):
        matched_transform_target(EntropySpec("renyi", q=2.0), "havrda_charvat")


def test_consistency_reports_for_all_pairs():
    """Ordering preservation across the four registered transform edges."""
    for source_id, target_id in TRANSFORM_PAIRS:
        for q in (0.5, 1.5):
            source = EntropySpec(source_id, q=q)
            target = matched_transform_target(source, target_id)
            report = check_transform_consistency(source, target, samples=250, rng_seed=3)
            assert report.passed, report.to_dict()
            assert report.compared_pairs > 0


def test_consistency_rejects_mismatched_target():
    source = EntropySpec("tsallis", q=2.0)
    wrong = EntropySpec("renyi", q=0.5)
    with pytest.raises(UnsupportedPair):
        check_transform_consistency(source, wrong, samples=10, rng_seed=0)
