"""Closed-form thresholds and verdict logic.

Three thresholds: the classical lower bound on the pair average for N
stochastic field sources and M detectors, the minimum reachable by symmetric
quantum inputs on an M-mode Fourier interferometer, and the minimum
achievable by any interferometer that splits into two independent blocks.
Measuring below a threshold (beyond statistical doubt) certifies the
corresponding property.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionError, InvalidStatisticsError, PreconditionError

# Certification requires the margin to exceed this many standard errors when
# an uncertainty is supplied; a conservative documented default.
SIGMA_RULE = 3.0

# Margins within this absolute epsilon count as boundary values, which are
# attainable and therefore never violations; keeps exact-threshold inputs on
# the non-violating side despite floating-point rounding of the thresholds.
BOUNDARY_MARGIN = 1e-12

CLASSICAL_COMPATIBLE = "classical-compatible"
NONCLASSICAL = "nonclassical"
INDIVISIBLE = "indivisible-certified"
INCONCLUSIVE = "inconclusive"


def classical_min(n_sources: int, n_detectors: int) -> float:
    """Least pair average reachable with stochastic classical fields.

    1 - (N-1)/(N(M-1)) for N <= M and 1 - 1/M for N >= M; the branches agree
    at N = M. Saturated by equal fixed-intensity inputs on a
    Fourier-transform interferometer (which ignores the surplus sources when
    N > M).
    """
    if n_detectors < 2:
        raise DimensionError("the pair average needs at least 2 detectors")
    if n_sources < 1:
        raise DimensionError("need at least one source")
    if n_sources <= n_detectors:
        return 1.0 - (n_sources - 1) / (n_sources * (n_detectors - 1))
    return 1.0 - 1.0 / n_detectors


def _check_eta(eta: float) -> None:
    if eta > 1.0:
        raise InvalidStatisticsError(
            f"eta = {eta!r} > 1 is impossible for integer photon numbers"
        )


def symmetric_quantum_min(n_detectors: int, eta: float) -> float:
    """Minimum pair average for identical quantum inputs on every port:
    1 - (1 + eta)/M, reached on the M-mode Fourier interferometer."""
    if n_detectors < 2:
        raise DimensionError("the pair average needs at least 2 detectors")
    _check_eta(eta)
    return 1.0 - (1.0 + eta) / n_detectors


def divisibility_threshold(n_modes: int, eta: float) -> float:
    """Minimum pair average for an interferometer split into two independent
    blocks, fed with m identical inputs of the given eta and fully monitored:
    1 - (1 + eta)(m-2)/(m(m-1))."""
    if n_modes < 2:
        raise DimensionError("divisibility needs at least 2 modes")
    _check_eta(eta)
    return 1.0 - (1.0 + eta) * (n_modes - 2) / (n_modes * (n_modes - 1))


@dataclass(frozen=True)
class WitnessVerdict:
    """Comparison of a measured or computed pair average with a threshold.

    ``margin`` is threshold - gbar; positive margin means the threshold is
    violated. A certifying classification additionally requires the margin to
    clear ``SIGMA_RULE`` standard errors when a standard error is present.
    """

    gbar: float
    threshold: float
    margin: float
    classification: str
    stderr: float | None = None
    confidence_sigmas: float | None = None

    def to_dict(self) -> dict:
        out = {
            "gbar": self.gbar,
            "threshold": self.threshold,
            "margin": self.margin,
            "classification": self.classification,
        }
        if self.stderr is not None:
            out["stderr"] = self.stderr
        if self.confidence_sigmas is not None:
            out["confidence_sigmas"] = self.confidence_sigmas
        return out

    def one_line(self) -> str:
        detail = f"gbar={self.gbar:.6g} vs threshold={self.threshold:.6g}"
        if self.stderr is not None:
            detail += f" (stderr={self.stderr:.2g})"
        return f"{self.classification}: {detail}, margin={self.margin:.6g}"


def _verdict(
    gbar: float, threshold: float, stderr: float | None, certified: str, sigma: float
) -> WitnessVerdict:
    margin = threshold - gbar
    sigmas = None
    if stderr is None:
        classification = certified if margin > BOUNDARY_MARGIN else CLASSICAL_COMPATIBLE
    else:
        if stderr > 0:
            sigmas = margin / stderr
        if abs(margin) <= max(sigma * stderr, BOUNDARY_MARGIN):
            classification = INCONCLUSIVE
        elif margin > 0:
            classification = certified
        else:
            classification = CLASSICAL_COMPATIBLE
    return WitnessVerdict(
        gbar=gbar,
        threshold=threshold,
        margin=margin,
        classification=classification,
        stderr=stderr,
        confidence_sigmas=sigmas,
    )


def nonclassicality_witness(
    gbar: float,
    n_sources: int,
    n_detectors: int,
    stderr: float | None = None,
    sigma: float = SIGMA_RULE,
) -> WitnessVerdict:
    """Compare a pair average against the classical bound for (N, M).

    A value below the bound cannot be produced by independent stochastic
    classical fields, whatever the linear evolution.
    """
    return _verdict(gbar, classical_min(n_sources, n_detectors), stderr, NONCLASSICAL, sigma)


def divisibility_witness(
    gbar: float,
    n_modes: int,
    eta: float,
    stderr: float | None = None,
    sigma: float = SIGMA_RULE,
) -> WitnessVerdict:
    """Compare a pair average against the two-block divisibility threshold.

    Stated for m identical inputs with eta >= 0 and all m outputs monitored;
    a value below the threshold certifies that the evolution cannot split
    into two independent subblocks.
    """
    if eta < 0:
        raise PreconditionError(
            "the divisibility criterion is stated for sub-Poissonian inputs (eta >= 0)"
        )
    return _verdict(gbar, divisibility_threshold(n_modes, eta), stderr, INDIVISIBLE, sigma)
