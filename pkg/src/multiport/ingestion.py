"""Turning measured intensity records into pair-average estimates.

The estimator is the ratio-of-means form: all per-detector and per-pair
averages are taken over the full sample before any ratio is formed, matching
the definition of the pair average. Uncertainty comes from recomputing the
same statistic on equal contiguous batches of shots.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DegenerateSetupError, InsufficientSamplesError, MatrixValidationError
from .report import (
    CorrelationReport,
    active_positions,
    assemble_report,
    batch_stderr,
    gbar_from_sums,
)

MIN_RECORDS = 100
DEFAULT_BATCHES = 100


@dataclass(frozen=True, eq=False)
class ShotRecord:
    """One experimental shot: simultaneous intensity readouts at M detectors."""

    shot_id: int
    intensities: np.ndarray

    def __post_init__(self):
        arr = np.array(self.intensities, dtype=float)
        if arr.ndim != 1 or arr.size == 0:
            raise MatrixValidationError("intensities must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)) or np.any(arr < 0):
            raise MatrixValidationError("intensities must be finite and >= 0")
        arr.setflags(write=False)
        object.__setattr__(self, "intensities", arr)


@dataclass(frozen=True)
class GbarEstimate:
    """Pair-average estimate from measured shots.

    Invariant under rescaling all intensities by a common constant, so the
    detectors' (shared) units never matter.
    """

    gbar: float
    stderr: float
    shots: int
    active_detectors: tuple[int, ...]

    def to_dict(self) -> dict:
        return {
            "gbar": self.gbar,
            "stderr": self.stderr,
            "shots": self.shots,
            "active_detectors": list(self.active_detectors),
        }


def estimate_gbar_from_records(
    records: Sequence[ShotRecord], batches: int = DEFAULT_BATCHES
) -> GbarEstimate:
    """Estimate the pair average and its standard error from shot records."""
    if len(records) < MIN_RECORDS:
        raise InsufficientSamplesError(
            f"need at least {MIN_RECORDS} records, got {len(records)}"
        )
    widths = {r.intensities.size for r in records}
    if len(widths) != 1:
        raise MatrixValidationError("all records must cover the same detectors")
    data = np.stack([r.intensities for r in records])
    n_shots, n_det = data.shape

    means = data.mean(axis=0)
    active = active_positions(means)
    if len(active) < 2:
        raise DegenerateSetupError("fewer than two detectors received light")
    pairs = [(a, b) for x, a in enumerate(active) for b in active[x + 1 :]]

    total_i = data.sum(axis=0)
    total_prod = data.T @ data
    gbar = gbar_from_sums(total_i, total_prod, n_shots, pairs)

    per_batch = []
    for part in np.array_split(np.arange(n_shots), min(batches, n_shots)):
        block = data[part]
        per_batch.append(
            gbar_from_sums(block.sum(axis=0), block.T @ block, len(part), pairs)
        )
    return GbarEstimate(
        gbar=float(gbar),
        stderr=batch_stderr(per_batch),
        shots=n_shots,
        active_detectors=tuple(active),
    )


def correlation_report_from_records(
    records: Sequence[ShotRecord], batches: int = DEFAULT_BATCHES
) -> CorrelationReport:
    """Full per-pair correlation report of measured shots (provenance 'measured')."""
    estimate = estimate_gbar_from_records(records, batches=batches)
    data = np.stack([r.intensities for r in records])
    n_shots = data.shape[0]
    total_prod = data.T @ data
    means = data.mean(axis=0)
    return assemble_report(
        detectors=range(data.shape[1]),
        means=means,
        pair_product=lambda a, b: total_prod[a, b] / n_shots,
        provenance="measured",
        stderr=estimate.stderr,
    )


def read_shot_records(
    lines: Iterable[str] | str, delimiter: str | None = None
) -> tuple[list[ShotRecord], int]:
    """Parse delimiter-separated intensity records, one shot per line.

    ``lines`` may be a path or an iterable of lines. An optional first line of
    non-numeric labels is treated as a header and fixes the detector count.
    Shots with a wrong column count or unparseable, negative, or non-finite
    values are rejected rather than imputed; the rejected count is returned
    alongside the accepted records.
    """
    if isinstance(lines, str):
        with open(lines, encoding="utf-8") as fh:
            raw = fh.readlines()
    else:
        raw = list(lines)

    records: list[ShotRecord] = []
    rejected = 0
    n_columns: int | None = None
    for line in raw:
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if delimiter is None and "," in line:
            delimiter = ","
        fields = line.split(delimiter)
        try:
            values = np.array([float(f) for f in fields])
        except ValueError:
            if n_columns is None:
                n_columns = len(fields)  # header with detector labels
            else:
                rejected += 1
            continue
        if n_columns is None:
            n_columns = values.size
        if (
            values.size != n_columns
            or not np.all(np.isfinite(values))
            or np.any(values < 0)
        ):
            rejected += 1
            continue
        records.append(ShotRecord(shot_id=len(records), intensities=values))
    return records, rejected
