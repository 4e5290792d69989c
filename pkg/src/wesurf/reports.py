"""Residual statistics shared by the PDE, geometry and soliton checks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class ResidualReport:
    """max/mean/RMS of |residual| over the retained nodes of a grid check.

    max_rel, when present, is the largest residual normalized by the local
    magnitude of the equation's terms (useful where derivatives blow up).
    """

    max_abs: float
    mean_abs: float
    rms: float
    node_count: int
    worst_node: tuple[int, int]
    max_rel: float | None = None
    dropped_count: int = 0

    def __post_init__(self):
        if self.node_count > 0 and not (self.max_abs + 1e-300 >= self.rms >= 0.0):
            raise ValueError("inconsistent residual statistics (need max >= rms >= 0)")


def residual_report(residual: np.ndarray, mask: np.ndarray | None = None,
                    scale: np.ndarray | None = None) -> ResidualReport:
    """Build a ResidualReport from a 2-D residual array.

    mask selects retained nodes (True = keep); scale, if given, is the local
    term-magnitude array used for the relative statistic.
    """
    mag = np.abs(residual)
    if mask is None:
        mask = np.ones(mag.shape, dtype=bool)
    dropped = int(mask.size - mask.sum())
    if not mask.any():
        return ResidualReport(np.nan, np.nan, np.nan, 0, (-1, -1), None, dropped)
    sel = mag[mask]
    masked = np.where(mask, mag, -np.inf)
    worst = np.unravel_index(int(np.argmax(masked)), mag.shape)
    max_rel = None
    if scale is not None:
        rel = mag / (1.0 + np.abs(scale))
        max_rel = float(np.max(rel[mask]))
    return ResidualReport(
        max_abs=float(sel.max()),
        mean_abs=float(sel.mean()),
        rms=float(np.sqrt(np.mean(sel ** 2))),
        node_count=int(mask.sum()),
        worst_node=(int(worst[0]), int(worst[1])),
        max_rel=max_rel,
        dropped_count=dropped,
    )


__all__ = ["ResidualReport", "residual_report"]
