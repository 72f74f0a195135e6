"""Independent reference computations used only by the test suite.

Nothing in the library imports this module.  The spectral radius comes
from LAPACK's shifted-QR eigensolver (via scipy) and the set radius from
exhaustive dense enumeration, so any agreement with the bracket-based
estimators is meaningful corroboration rather than a tautology.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np
import scipy.linalg

from .sets import MatrixSet

ORACLE_DIM_CAP = 16
ORACLE_WORD_CAP = 1_000_000
_RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class OracleResult:
    value: float
    residual: float
    words_checked: int = 0


def oracle_spectral_radius(a) -> OracleResult:
    """Spectral radius of a small nonnegative matrix via dense
    eigendecomposition, with the eigenpair residual as a quality check."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    n = a.shape[0]
    if n > ORACLE_DIM_CAP:
        raise ValueError(f"oracle limited to dimension {ORACLE_DIM_CAP}")
    vals, vecs = scipy.linalg.eig(a)
    i = int(np.argmax(np.abs(vals)))
    lam, v = vals[i], vecs[:, i]
    residual = float(np.linalg.norm(a @ v - lam * v))
    value = float(np.abs(lam))
    if residual > _RESIDUAL_TOL * max(1.0, value):
        raise RuntimeError(
            f"eigenpair residual {residual:.3e} too large for a reliable "
            f"reference value")
    return OracleResult(value, residual)


def oracle_gen_radius(sigma: MatrixSet, depth: int) -> OracleResult:
    """Exhaustive finite-depth generalized spectral radius
    ``max_{m<=depth} max_{w in sigma^m} r(w)^(1/m)``.

    Materializes every word up to ``depth``; refuses when the count would
    exceed the enumeration cap.
    """
    k = len(sigma)
    total = sum(k ** m for m in range(1, depth + 1))
    if total > ORACLE_WORD_CAP:
        raise ValueError(
            f"{total} words exceeds the oracle cap {ORACLE_WORD_CAP}")
    members = [np.asarray(m, dtype=float) for m in sigma]
    best = 0.0
    worst_residual = 0.0
    checked = 0
    for m in range(1, depth + 1):
        for word in product(range(k), repeat=m):
            w = members[word[0]]
            for j in word[1:]:
                w = w @ members[j]
            res = oracle_spectral_radius(w)
            worst_residual = max(worst_residual, res.residual)
            best = max(best, res.value ** (1.0 / m))
            checked += 1
    return OracleResult(best, worst_residual, checked)
