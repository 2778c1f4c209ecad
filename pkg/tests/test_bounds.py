import pytest

from multiport import (
    DimensionError,
    InvalidStatisticsError,
    PreconditionError,
    classical_min,
    divisibility_threshold,
    divisibility_witness,
    nonclassicality_witness,
    symmetric_quantum_min,
)


# ----------------------------------------------------------- classical bound


def test_classical_min_known_values():
    assert classical_min(2, 2) == 0.5
    assert classical_min(2, 3) == 0.75
    assert classical_min(5, 3) == pytest.approx(2 / 3, abs=1e-15)


def test_classical_min_single_source():
    for m in range(2, 10):
        assert classical_min(1, m) == 1.0


def test_classical_min_rejects_bad_dimensions():
    with pytest.raises(DimensionError):
        classical_min(2, 1)
    with pytest.raises(DimensionError):
        classical_min(0, 3)


def test_classical_min_branches_agree_at_diagonal():
    for m in range(2, 65):
        low = 1.0 - (m - 1) / (m * (m - 1))
        high = 1.0 - 1.0 / m
        assert abs(low - high) <= 1e-15
        assert classical_min(m, m) == pytest.approx(high, abs=1e-15)


def test_classical_min_monotone_and_bounded():
    for m in range(2, 65):
        values = [classical_min(n, m) for n in range(1, 3 * m)]
        assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))
        assert all(0.5 <= v <= 1.0 for v in values)


# ----------------------------------------------------------- quantum minimum


def test_symmetric_quantum_min_known_values():
    assert symmetric_quantum_min(2, 1.0) == 0.0
    assert symmetric_quantum_min(3, 1.0) == pytest.approx(1 / 3, abs=1e-15)


def test_symmetric_quantum_min_poissonian_matches_classical():
    for m in range(2, 20):
        assert symmetric_quantum_min(m, 0.0) == pytest.approx(classical_min(m, m), abs=1e-15)


def test_quantum_hierarchy_below_classical():
    for m in range(2, 30):
        for eta in (0.0, 0.25, 0.5, 1.0):
            assert symmetric_quantum_min(m, eta) <= classical_min(m, m) + 1e-15


def test_symmetric_quantum_min_validation():
    with pytest.raises(InvalidStatisticsError):
        symmetric_quantum_min(3, 1.5)
    with pytest.raises(DimensionError):
        symmetric_quantum_min(1, 0.5)


# ----------------------------------------------------------- divisibility


def test_divisibility_threshold_known_values():
    for eta in (0.0, 0.3, 1.0):
        assert divisibility_threshold(2, eta) == 1.0
    assert divisibility_threshold(4, 1.0) == pytest.approx(2 / 3, abs=1e-15)


def test_divisibility_strictly_above_quantum_minimum():
    # holds for every m >= 2 whenever eta > -1
    for m in range(2, 65):
        for eta in (-0.99, -0.5, 0.0, 0.5, 1.0):
            assert divisibility_threshold(m, eta) > symmetric_quantum_min(m, eta)


def test_divisibility_threshold_validation():
    with pytest.raises(DimensionError):
        divisibility_threshold(1, 0.5)
    with pytest.raises(InvalidStatisticsError):
        divisibility_threshold(4, 1.2)


# ----------------------------------------------------------- witnesses


def test_hom_witness_is_nonclassical():
    verdict = nonclassicality_witness(0.0, 2, 2)
    assert verdict.classification == "nonclassical"
    assert verdict.threshold == 0.5
    assert verdict.margin == 0.5


def test_boundary_is_not_a_violation():
    verdict = nonclassicality_witness(0.5, 2, 2)
    assert verdict.classification == "classical-compatible"
    assert verdict.margin == 0.0


def test_noisy_margin_is_inconclusive():
    verdict = nonclassicality_witness(0.45, 2, 2, stderr=0.03)
    assert verdict.classification == "inconclusive"
    assert verdict.margin == pytest.approx(0.05, abs=1e-15)
    assert verdict.confidence_sigmas == pytest.approx(0.05 / 0.03, abs=1e-12)


def test_clear_margin_with_small_stderr_certifies():
    verdict = nonclassicality_witness(0.3, 2, 2, stderr=0.01)
    assert verdict.classification == "nonclassical"
    assert verdict.confidence_sigmas > 3


def test_margin_below_threshold_with_noise_is_compatible():
    verdict = nonclassicality_witness(0.9, 2, 2, stderr=0.01)
    assert verdict.classification == "classical-compatible"


def test_sigma_rule_is_configurable():
    strict = nonclassicality_witness(0.45, 2, 2, stderr=0.03, sigma=1.0)
    assert strict.classification == "nonclassical"


def test_margin_identity():
    for gbar in (0.0, 0.21, 0.5, 0.77):
        verdict = nonclassicality_witness(gbar, 3, 4)
        assert verdict.margin == verdict.threshold - verdict.gbar


def test_divisibility_witness_certifies_ftm_value():
    verdict = divisibility_witness(0.5, 4, 1.0)
    assert verdict.classification == "indivisible-certified"
    assert verdict.threshold == pytest.approx(2 / 3, abs=1e-15)


def test_divisibility_witness_boundary_and_above():
    assert divisibility_witness(2 / 3, 4, 1.0).classification == "classical-compatible"
    above = divisibility_witness(0.7, 4, 1.0)
    assert above.classification == "classical-compatible"
    assert above.margin < 0


def test_divisibility_witness_rejects_negative_eta():
    with pytest.raises(PreconditionError):
        divisibility_witness(0.5, 4, -0.1)


def test_verdict_serialization_and_summary():
    verdict = nonclassicality_witness(0.4, 2, 2, stderr=0.01)
    data = verdict.to_dict()
    assert data["classification"] == "nonclassical"
    assert data["margin"] == pytest.approx(0.1, abs=1e-15)
    assert "nonclassical" in verdict.one_line()
