"""Classical stochastic-field engine.

Computes mean intensities, pair products <I_i I_j>, and their normalized
average for fields A_a with independent uniform random phases propagated by a
complex transfer matrix. Both a closed-form evaluation and a seeded Monte
Carlo sampler are provided; they estimate the same quantities and serve as
cross-checks of one another.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, InsufficientSamplesError
from .interferometer import as_complex_matrix
from .report import (
    CorrelationReport,
    active_positions,
    assemble_report,
    batch_stderr,
    gbar_from_sums,
)
from .sources import ClassicalSource, OverlapMatrix, classical_moments


@dataclass(frozen=True, eq=False)
class ClassicalSetup:
    """Transfer matrix, one stochastic source per input port, optional
    pairwise mode overlaps, and the single-pulse energy scale.

    The energy scale multiplies every intensity and provably cancels in the
    normalized pair average; it is kept so intensity reports carry physical
    meaning.
    """

    transfer: np.ndarray
    sources: tuple[ClassicalSource, ...]
    overlap: OverlapMatrix | None = None
    energy_scale: float = 1.0

    def __post_init__(self):
        arr = as_complex_matrix(self.transfer, "transfer matrix")
        sources = tuple(self.sources)
        if arr.shape[1] != len(sources):
            raise DimensionError(
                f"transfer matrix has {arr.shape[1]} columns but {len(sources)} sources given"
            )
        if self.overlap is not None and self.overlap.dim != len(sources):
            raise DimensionError("overlap matrix must be n_sources x n_sources")
        if not (self.energy_scale > 0):
            raise DimensionError("energy scale must be positive")
        object.__setattr__(self, "transfer", arr)
        object.__setattr__(self, "sources", sources)

    @property
    def n_detectors(self) -> int:
        return self.transfer.shape[0]

    @property
    def n_sources(self) -> int:
        return self.transfer.shape[1]


def _source_moments(setup: ClassicalSetup) -> tuple[np.ndarray, np.ndarray]:
    moments = [classical_moments(s) for s in setup.sources]
    m2 = np.array([m[0] for m in moments])
    m4 = np.array([m[1] for m in moments])
    return m2, m4


def classical_intensity_means(setup: ClassicalSetup) -> np.ndarray:
    """Mean intensity per detector: E * sum_a |T_ia|^2 <|A_a|^2>."""
    m2, _ = _source_moments(setup)
    return setup.energy_scale * (np.abs(setup.transfer) ** 2 @ m2)


def classical_pair_correlator(setup: ClassicalSetup, i: int, j: int) -> float:
    """Mean intensity product <I_i I_j> for detectors i != j.

    Three contributions: the uncorrelated product, the two-source
    interference term (scaled by |V_ab|^2 when an overlap matrix is present),
    and a nonnegative term from per-source intensity fluctuations that
    vanishes for fixed-intensity sources.
    """
    m = setup.n_detectors
    if not (0 <= i < m and 0 <= j < m):
        raise DimensionError(f"detector indices ({i}, {j}) out of range for {m} outputs")
    if i == j:
        raise DimensionError("pair correlator needs two distinct detectors")
    m2, m4 = _source_moments(setup)
    t = setup.transfer
    e = setup.energy_scale

    means = classical_intensity_means(setup)
    b = t[i] * t[j].conj() * m2
    if setup.overlap is None:
        interference = abs(b.sum()) ** 2 - (np.abs(b) ** 2).sum()
    else:
        w = np.abs(setup.overlap.matrix) ** 2
        interference = float((b.conj() @ w @ b).real) - (np.abs(b) ** 2).sum()
    fluctuation = float(np.abs(t[i]) ** 2 @ (np.abs(t[j]) ** 2 * (m4 - m2**2)))
    return float(means[i] * means[j] + e**2 * (interference + fluctuation))


def classical_gbar(setup: ClassicalSetup) -> CorrelationReport:
    """Closed-form normalized pair average over all active detectors."""
    means = classical_intensity_means(setup)
    return assemble_report(
        detectors=range(setup.n_detectors),
        means=means,
        pair_product=lambda a, b: classical_pair_correlator(setup, a, b),
        provenance="analytic",
    )


def _sample_amplitudes(
    setup: ClassicalSetup,
    n_shots: int,
    phase_rng: np.random.Generator,
    pick_rng: np.random.Generator,
) -> np.ndarray:
    """Complex field amplitudes (n_shots x n_sources) for one batch.

    Shot k consumes the k-th row of each stream, so a shot's randomness is a
    fixed function of (seed, shot index) regardless of batching.
    """
    n = setup.n_sources
    phases = phase_rng.uniform(0.0, 2.0 * np.pi, size=(n_shots, n))
    picks = pick_rng.random(size=(n_shots, n))
    amps = np.empty((n_shots, n))
    for a, src in enumerate(setup.sources):
        cum = np.cumsum(src.probabilities)
        idx = np.minimum(np.searchsorted(cum, picks[:, a], side="right"), cum.size - 1)
        amps[:, a] = src.amplitudes[idx]
    return amps * np.exp(1j * phases)


def _intensities(setup: ClassicalSetup, fields: np.ndarray, modes: np.ndarray | None) -> np.ndarray:
    if modes is None:
        out = fields @ setup.transfer.T
        return setup.energy_scale * (np.abs(out) ** 2)
    # per-source unit mode vectors: the detected field is a vector sum and the
    # intensity its squared norm, reproducing the |V_ab|^2 interference factor
    per_mode = np.einsum("ia,sak->sik", setup.transfer, fields[:, :, None] * modes[None])
    return setup.energy_scale * (np.abs(per_mode) ** 2).sum(axis=2)


def mc_estimate_gbar(
    setup: ClassicalSetup, shots: int, seed: int, batches: int = 100
) -> CorrelationReport:
    """Monte Carlo estimate of the normalized pair average.

    Each shot samples one realization per source plus an independent uniform
    phase, propagates the fields, and records all detector intensities. The
    point estimate is the ratio of full-sample means; the standard error
    comes from the spread of the same statistic over equal shot batches.
    Results are reproducible bit-for-bit for a fixed (seed, shots, batches).
    """
    if shots < 2:
        raise InsufficientSamplesError("Monte Carlo estimation needs shots >= 2")
    m = setup.n_detectors
    modes = setup.overlap.mode_vectors() if setup.overlap is not None else None

    root = np.random.SeedSequence(seed)
    phase_ss, pick_ss = root.spawn(2)
    phase_rng = np.random.Generator(np.random.Philox(phase_ss))
    pick_rng = np.random.Generator(np.random.Philox(pick_ss))

    n_batches = min(batches, shots)
    base, extra = divmod(shots, n_batches)
    sizes = [base + 1 if b < extra else base for b in range(n_batches)]
    sum_i = np.zeros((n_batches, m))
    sum_prod = np.zeros((n_batches, m, m))
    for b, size in enumerate(sizes):
        fields = _sample_amplitudes(setup, size, phase_rng, pick_rng)
        intensities = _intensities(setup, fields, modes)
        sum_i[b] = intensities.sum(axis=0)
        sum_prod[b] = intensities.T @ intensities

    total_i = sum_i.sum(axis=0)
    total_prod = sum_prod.sum(axis=0)
    means = total_i / shots

    active = active_positions(means)
    pairs = [(a, b) for x, a in enumerate(active) for b in active[x + 1 :]]
    if pairs:
        per_batch = [
            gbar_from_sums(sum_i[b], sum_prod[b], sizes[b], pairs) for b in range(n_batches)
        ]
        stderr = batch_stderr(per_batch)
    else:
        stderr = None
    return assemble_report(
        detectors=range(m),
        means=means,
        pair_product=lambda a, b: total_prod[a, b] / shots,
        provenance="monte-carlo",
        stderr=stderr,
    )
