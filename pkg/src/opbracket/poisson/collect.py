"""Residual bookkeeping shared by the identity suites."""
from typing import Dict, List

import numpy as np

from .report import BracketReport, Tolerances, make_report, normalized_residual


def worst_residual(lhs, rhs, scale=0.0, mask=None) -> float:
    """Largest normalized residual, ignoring entries where ``mask`` is false."""
    with np.errstate(all="ignore"):
        res = normalized_residual(lhs, rhs, scale)
    if mask is not None:
        res = np.where(mask, res, 0.0)
    if res.size == 0:
        return 0.0
    if np.any(np.isnan(res)):
        return float("inf")
    return float(np.max(res))


def bezout_values(fz, gz, fw, gw, z, w):
    """(f(z)g(w) − f(w)g(z))/(z − w) on the pair grid from sampled values."""
    return (fz[:, None] * gw[None, :] - fw[None, :] * gz[:, None]) / (z[:, None] - w[None, :])


class SuiteCollector:
    """Worst residual per identity over every degree it is checked at."""

    def __init__(self, table: Tolerances, grid: str, size: int):
        self.table = table
        self.grid = grid
        self.size = size
        self.worst: Dict[str, float] = {}
        self.category: Dict[str, str] = {}
        self.notes: Dict[str, str] = {}
        self.reported: Dict[str, bool] = {}

    def add(self, identity_id: str, category: str, residual: float, asserted: bool = True):
        self.worst[identity_id] = max(self.worst.get(identity_id, 0.0), residual)
        self.category[identity_id] = category
        self.reported[identity_id] = not asserted

    def note(self, identity_id: str, text: str):
        self.notes[identity_id] = text

    def reports(self) -> List[BracketReport]:
        return [make_report(identity_id, residual,
                            self.table.resolve(identity_id, self.category[identity_id]),
                            self.grid, self.notes.get(identity_id, ""), self.size,
                            asserted=not self.reported[identity_id])
                for identity_id, residual in self.worst.items()]
