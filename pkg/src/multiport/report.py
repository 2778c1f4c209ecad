"""Correlation reports shared by the classical and quantum engines.

A report carries per-detector mean intensities, the normalized pair products
<I_i I_j> / (<I_i> <I_j>) for every active detector pair, and their average.
Detectors whose mean intensity is negligible relative to the brightest one
are excluded so the ratios stay well defined.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DegenerateSetupError

# A detector is active when its mean exceeds this fraction of the brightest
# detector's mean; relative so the criterion is independent of units.
RELATIVE_EXCLUSION = 1e-12

PROVENANCES = ("analytic", "monte-carlo", "oracle", "measured")


@dataclass(frozen=True, eq=False)
class CorrelationReport:
    """Pair-intensity correlation summary.

    ``detectors`` lists the monitored output indices (aligned with
    ``intensity_means``); ``active_detectors`` is the subset that survived
    exclusion, and ``pair_ratios`` holds (i, j, ratio) for active i < j.
    ``gbar`` is the arithmetic mean of the ratios.
    """

    detectors: tuple[int, ...]
    intensity_means: np.ndarray
    active_detectors: tuple[int, ...]
    pair_ratios: tuple[tuple[int, int, float], ...]
    gbar: float
    provenance: str
    stderr: float | None = None
    pruned_mass: float | None = None

    def __post_init__(self):
        if self.provenance not in PROVENANCES:
            raise ValueError(f"unknown provenance {self.provenance!r}")
        ratios = [r for _, _, r in self.pair_ratios]
        if not ratios:
            raise DegenerateSetupError("a report needs at least one detector pair")
        if abs(self.gbar - sum(ratios) / len(ratios)) > 1e-12:
            raise ValueError("gbar must equal the mean of the pair ratios")

    def to_dict(self) -> dict:
        out = {
            "detectors": list(self.detectors),
            "intensity_means": [float(v) for v in self.intensity_means],
            "active_detectors": list(self.active_detectors),
            "pair_ratios": [[i, j, r] for i, j, r in self.pair_ratios],
            "gbar": self.gbar,
            "provenance": self.provenance,
        }
        if self.stderr is not None:
            out["stderr"] = self.stderr
        if self.pruned_mass is not None:
            out["pruned_mass"] = self.pruned_mass
        return out

    def to_table(self) -> str:
        """Tabular text: one 'i j ratio' row per pair plus a summary line."""
        lines = ["i\tj\tratio"]
        for i, j, r in self.pair_ratios:
            lines.append(f"{i}\t{j}\t{r:.17g}")
        stderr = "-" if self.stderr is None else f"{self.stderr:.17g}"
        lines.append(f"# gbar={self.gbar:.17g} stderr={stderr} provenance={self.provenance}")
        return "\n".join(lines) + "\n"


def active_positions(means: np.ndarray) -> list[int]:
    """Positions whose mean intensity exceeds the relative exclusion threshold."""
    top = float(np.max(means)) if means.size else 0.0
    return [k for k, v in enumerate(means) if v > RELATIVE_EXCLUSION * top and top > 0]


def assemble_report(
    detectors: Sequence[int],
    means: np.ndarray,
    pair_product: Callable[[int, int], float],
    provenance: str,
    stderr: float | None = None,
    pruned_mass: float | None = None,
) -> CorrelationReport:
    """Apply detector exclusion and average the normalized pair products.

    ``pair_product(a, b)`` must return <I_a I_b> for positions a < b into
    ``detectors``/``means``.
    """
    active = active_positions(means)
    if len(active) < 2:
        raise DegenerateSetupError(
            "fewer than two detectors receive light; the pair average needs >= 2"
        )
    ratios = []
    for x, a in enumerate(active):
        for b in active[x + 1 :]:
            value = pair_product(a, b) / (means[a] * means[b])
            ratios.append((detectors[a], detectors[b], float(value)))
    gbar = sum(r for _, _, r in ratios) / len(ratios)
    means = np.array(means, dtype=float)
    means.setflags(write=False)
    return CorrelationReport(
        detectors=tuple(detectors),
        intensity_means=means,
        active_detectors=tuple(detectors[a] for a in active),
        pair_ratios=tuple(ratios),
        gbar=gbar,
        provenance=provenance,
        stderr=stderr,
        pruned_mass=pruned_mass,
    )


def gbar_from_sums(
    sum_i: np.ndarray, sum_prod: np.ndarray, count: int, pairs: Sequence[tuple[int, int]]
) -> float:
    """Ratio-of-means pair average from accumulated sums over ``count`` shots.

    ``sum_i[a]`` is the summed intensity at position a and ``sum_prod[a, b]``
    the summed product; averages are taken before the ratio.
    """
    total = 0.0
    for a, b in pairs:
        total += (sum_prod[a, b] / count) / ((sum_i[a] / count) * (sum_i[b] / count))
    return total / len(pairs)


def batch_stderr(values: Sequence[float]) -> float:
    """Standard error of the mean from per-batch statistic values."""
    arr = np.asarray(values, dtype=float)
    if arr.size < 2:
        return math.nan
    return float(np.sqrt(arr.var(ddof=1) / arr.size))
