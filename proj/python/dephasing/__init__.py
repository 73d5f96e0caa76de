"""Exact pure-dephasing dynamics and decoherence-free subspaces.

Exact couplings are accepted as ``Fraction``, ``int`` or rational text
("3/4", "0.25") and returned as ``Fraction``.
"""

import json
from fractions import Fraction

from . import _dephasing
from ._dephasing import (
    DephasingError,
    DimensionError,
    EnvState,
    BasisIndexError,
    LimitError,
    ParseError,
    StateError,
    UsageError,
    collective_partition,
    decoherence_rate,
    dfs_partition,
    evolve_density,
    pair_case,
    preserves_coherence,
    rate_series,
    time_grid,
    verify,
)

__all__ = [
    "DephasingError", "DimensionError", "BasisIndexError", "EnvState", "InteractionMatrix", "LimitError",
    "ParseError", "StateError", "UsageError", "collective_partition", "decoherence_rate", "dfs_partition",
    "dfs_report", "energy", "evolve_density", "pair_case", "preserves_coherence", "rate_series",
    "signature", "time_grid", "verify",
]


def _text(x):
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}"
    if isinstance(x, float):
        raise TypeError("couplings must be exact; pass a Fraction or a string, not a float")
    return str(x)


class InteractionMatrix(_dephasing.InteractionMatrix):
    def __init__(self, rows):
        super().__init__([[_text(x) for x in row] for row in rows])

    @classmethod
    def from_json(cls, text):
        return cls(_dephasing.InteractionMatrix.from_json(text)._rows())

    def rows(self):
        return [[Fraction(x) for x in row] for row in self._rows()]


def energy(g, k, n):
    return Fraction(_dephasing.energy(g, k, n))


def signature(g, k):
    return [Fraction(x) for x in _dephasing.signature(g, k)]


def dfs_report(g):
    return json.loads(_dephasing.dfs_report_json(g))
