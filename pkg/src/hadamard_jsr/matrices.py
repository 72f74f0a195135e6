"""Dense nonnegative-matrix arithmetic.

Ordinary and entrywise (Hadamard) operations, induced operator norms, and
certified enclosures of the spectral radius of a single matrix.  All
functions are pure; arrays are never mutated in place.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionMismatch

ROW_SUM = "row-sum"  # operator norm on l-infinity
COL_SUM = "col-sum"  # operator norm on l-1
SPECTRAL = "spectral"  # operator norm on l-2, certified upper bound only
NORM_KINDS = (ROW_SUM, COL_SUM, SPECTRAL)

DEFAULT_TOL = 1e-9
_SPECTRAL_TOL = 1e-12
_MAX_SQUARINGS = 256


def check_matrix(a) -> np.ndarray:
    """Validate and return ``a`` as a square float array with finite
    nonnegative entries."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise DimensionMismatch(
            f"expected a nonempty square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix entries must be finite (no NaN/inf)")
    if np.any(a < 0):
        raise ValueError("matrix entries must be nonnegative")
    return a


def _check_same_dim(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(
            f"incompatible operands: {a.shape} vs {b.shape}")


@dataclass(frozen=True)
class RadiusBracket:
    """Certified enclosure ``lo <= rho <= hi`` with the search depth and the
    norm that produced it."""

    lo: float
    hi: float
    depth: int
    norm: str

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi < np.inf):
            raise ValueError(
                f"invalid bracket [{self.lo}, {self.hi}]")
        if self.depth < 1:
            raise ValueError("depth must be a positive integer")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def powered(self, e: float) -> "RadiusBracket":
        """Bracket of ``rho**e`` for a nonnegative exponent."""
        if e < 0:
            raise ValueError("exponent must be nonnegative")
        return RadiusBracket(self.lo ** e, self.hi ** e, self.depth, self.norm)


def hadamard_product(a, b) -> np.ndarray:
    """Entrywise product ``a[i,j] * b[i,j]``."""
    a, b = check_matrix(a), check_matrix(b)
    _check_same_dim(a, b)
    return a * b


def hadamard_power(a, t: float) -> np.ndarray:
    """Entrywise power ``a[i,j]**t`` for ``t > 0`` (with ``0**t = 0``)."""
    a = check_matrix(a)
    if not t > 0:
        raise ValueError(f"Hadamard power requires t > 0, got {t}")
    out = a ** t
    if not np.all(np.isfinite(out)):
        raise ValueError("Hadamard power overflowed to infinity")
    return out


def weighted_hadamard_geometric_mean(matrices, weights) -> np.ndarray:
    """Entrywise weighted geometric mean ``prod_k matrices[k]**w[k]``.

    ``weights`` is a sequence of positive reals or a
    :class:`~hadamard_jsr.sets.WeightVector`; the weights need not sum to 1.
    """
    w = np.asarray(getattr(weights, "weights", weights), dtype=float)
    mats = [check_matrix(m) for m in matrices]
    if len(mats) != w.size:
        raise DimensionMismatch(
            f"{len(mats)} matrices but {w.size} weights")
    if len(mats) == 0:
        raise ValueError("need at least one matrix")
    if np.any(w <= 0):
        raise ValueError("weights must be positive")
    for m in mats[1:]:
        _check_same_dim(mats[0], m)
    out = mats[0] ** w[0]
    for m, wk in zip(mats[1:], w[1:]):
        out = out * m ** wk
    return out


def matrix_product(a, b) -> np.ndarray:
    """Ordinary matrix product."""
    a, b = check_matrix(a), check_matrix(b)
    _check_same_dim(a, b)
    return a @ b


def transpose(a) -> np.ndarray:
    """Adjoint (transpose) of a real nonnegative matrix."""
    return check_matrix(a).T.copy()


def induced_norm(a, kind: str = ROW_SUM) -> float:
    """Induced operator norm of ``a``.

    ``row-sum`` and ``col-sum`` are exact; ``spectral`` is computed to
    relative tolerance 1e-12 and rounded up so the returned value is a
    certified upper bound.
    """
    a = check_matrix(a)
    if kind == ROW_SUM:
        return float(a.sum(axis=1).max())
    if kind == COL_SUM:
        return float(a.sum(axis=0).max())
    if kind == SPECTRAL:
        gram = a.T @ a
        hi = spectral_radius_bracket(gram, tol=_SPECTRAL_TOL).hi
        return float(np.sqrt(hi) * (1.0 + _SPECTRAL_TOL))
    raise ValueError(f"unknown norm kind {kind!r}")


def _strongly_connected_components(adj: np.ndarray) -> list[np.ndarray]:
    """Partition indices into strongly connected components of the boolean
    adjacency matrix, via boolean transitive closure."""
    n = adj.shape[0]
    reach = adj | np.eye(n, dtype=bool)
    # repeated squaring reaches the closure in ceil(log2 n) steps
    steps = max(1, int(np.ceil(np.log2(n)))) if n > 1 else 1
    for _ in range(steps):
        reach = reach | (reach @ reach)
    mutual = reach & reach.T
    seen = np.zeros(n, dtype=bool)
    comps = []
    for i in range(n):
        if not seen[i]:
            comp = np.flatnonzero(mutual[i])
            seen[comp] = True
            comps.append(comp)
    return comps


def _collatz_wielandt(c: np.ndarray, tol: float) -> tuple[float, float, int]:
    """Certified bracket for ``rho(c)`` of an irreducible nonnegative matrix.

    Works on the primitive shift ``P = c + I`` (``rho(P) = rho(c) + 1``):
    repeated squaring of the normalized power drives ``x = P^(2^s) @ 1``
    to the Perron direction doubly exponentially, and for any positive x
    the Collatz-Wielandt ratios of ``P @ x / x`` enclose ``rho(P)``.
    """
    n = c.shape[0]
    if n == 1:
        v = float(c[0, 0])
        return v, v, 1
    p = c + np.eye(n)
    q = p / p.max()
    best_lo, best_hi = 0.0, np.inf
    for s in range(1, _MAX_SQUARINGS + 1):
        # q @ ones is mathematically positive (positive diagonal) but may
        # underflow; the clamp keeps x a valid positive test vector.
        x = np.maximum(q.sum(axis=1), 1e-300)
        ratios = (p @ x) / x
        best_lo = max(best_lo, float(ratios.min()))
        best_hi = min(best_hi, float(ratios.max()))
        if best_hi - best_lo <= tol * max(1.0, best_hi - 1.0):
            return max(best_lo - 1.0, 0.0), best_hi - 1.0, s
        q = q @ q
        q /= q.max()
    raise ConvergenceError(
        f"Collatz-Wielandt bracket did not reach width {tol} within "
        f"{_MAX_SQUARINGS} squarings",
        bracket=RadiusBracket(max(best_lo - 1.0, 0.0), best_hi - 1.0,
                              _MAX_SQUARINGS, ROW_SUM),
    )


def _block_bracket(sub: np.ndarray, tol: float) -> tuple[float, float, int]:
    """Bracket ``rho`` of an irreducible block, with fallbacks for blocks
    whose Perron vector exceeds double-precision dynamic range.

    The upper envelope of a Collatz-Wielandt run is certified at every
    iteration, so a failed run still yields a valid ``hi``; the lower
    endpoint is then recovered from the transposed block (same radius,
    possibly representable Perron vector) or from the block with its
    far-below-scale entries pruned (entrywise monotone, so still a lower
    bound).
    """
    try:
        return _collatz_wielandt(sub, tol)
    except ConvergenceError as exc:
        hi = exc.bracket.hi
    try:
        t_lo, t_hi, t_depth = _collatz_wielandt(sub.T, tol)
        return t_lo, min(hi, t_hi), t_depth
    except ConvergenceError as exc:
        hi = min(hi, exc.bracket.hi)
    lo = 0.0
    scale = float(sub.max())
    for rel in (1e-200, 1e-120, 1e-60, 1e-30, 1e-15):
        pruned = np.where(sub < scale * rel, 0.0, sub)
        if (pruned > 0).sum() == (sub > 0).sum():
            continue
        lo = max(lo, spectral_radius_bracket(pruned, tol).lo)
        if hi - lo <= tol * max(1.0, hi):
            return lo, hi, _MAX_SQUARINGS
    raise ConvergenceError(
        f"spectral radius bracket stuck at width {hi - lo:.3e}; the "
        f"Perron vector spans more than double-precision range",
        bracket=RadiusBracket(lo, hi, _MAX_SQUARINGS, ROW_SUM))


def spectral_radius_bracket(a, tol: float = DEFAULT_TOL) -> RadiusBracket:
    """Certified bracket ``[lo, hi]`` with ``lo <= rho(a) <= hi`` and
    ``hi - lo <= tol * max(1, hi)``.

    The matrix is split into strongly connected components; the spectral
    radius is the maximum over the (irreducible) diagonal blocks, each of
    which is bracketed by Collatz-Wielandt iteration on the primitive
    shift ``block + I``.
    """
    a = check_matrix(a)
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi, depth = 0.0, 0.0, 1
    for comp in _strongly_connected_components(a > 0):
        sub = a[np.ix_(comp, comp)]
        c_lo, c_hi, c_depth = _block_bracket(sub, tol)
        lo = max(lo, c_lo)
        hi = max(hi, c_hi)
        depth = max(depth, c_depth)
    return RadiusBracket(min(lo, hi), hi, depth, ROW_SUM)
