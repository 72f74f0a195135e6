"""Finite sets of nonnegative matrices and set-level constructions.

Realizes products, powers, Hadamard means, sums, adjoints, cyclic factors
and geometric symmetrizations of finite matrix sets.  Members are stored as
a single read-only ``(count, dim, dim)`` array so batched numpy kernels can
consume them directly; duplicates are permitted and never affect radius
semantics.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CapExceeded, DimensionMismatch, RegimeError
from .matrices import check_matrix

MEMBER_CAP = 200_000

CONVEX = "convex"  # weights sum to 1
SUPER = "super"    # weights sum to >= 1 (matrix-mode theorems)

_REGIME_TOL = 1e-12


@dataclass(frozen=True)
class WeightVector:
    """Positive weights with a declared sum regime."""

    weights: tuple[float, ...]
    regime: str = CONVEX

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.size == 0 or np.any(w <= 0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be positive finite reals")
        total = float(w.sum())
        if self.regime == CONVEX:
            if abs(total - 1.0) > _REGIME_TOL * max(1.0, total):
                raise RegimeError(
                    f"convex regime requires sum = 1, got {total}")
        elif self.regime == SUPER:
            if total < 1.0 - _REGIME_TOL:
                raise RegimeError(
                    f"super regime requires sum >= 1, got {total}")
        else:
            raise RegimeError(f"unknown regime {self.regime!r}")
        object.__setattr__(self, "weights", tuple(float(x) for x in w))

    def __len__(self):
        return len(self.weights)


def uniform_weights(m: int) -> WeightVector:
    """Convex weights (1/m, ..., 1/m)."""
    return WeightVector((1.0 / m,) * m, CONVEX)


@dataclass(frozen=True)
class MatrixSet:
    """Nonempty finite set of same-dimension nonnegative matrices."""

    members: np.ndarray  # (count, dim, dim), read-only
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        m = np.asarray(self.members, dtype=float)
        if m.ndim != 3 or m.shape[0] == 0 or m.shape[1] != m.shape[2]:
            raise DimensionMismatch(
                f"expected a nonempty stack of square matrices, "
                f"got shape {m.shape}")
        if not np.all(np.isfinite(m)) or np.any(m < 0):
            raise ValueError("set members must be finite and nonnegative")
        m = np.ascontiguousarray(m)
        m.flags.writeable = False
        object.__setattr__(self, "members", m)

    @property
    def dim(self) -> int:
        return self.members.shape[1]

    def __len__(self):
        return self.members.shape[0]

    def __iter__(self):
        return iter(self.members)


def matrix_set(matrices, name: str | None = None) -> MatrixSet:
    """Build a MatrixSet from an iterable of square matrices."""
    mats = [check_matrix(a) for a in matrices]
    if not mats:
        raise ValueError("matrix set must be nonempty")
    for a in mats[1:]:
        if a.shape != mats[0].shape:
            raise DimensionMismatch("set members must share one dimension")
    return MatrixSet(np.stack(mats), name=name)


def _check_dims(*sets: MatrixSet) -> int:
    dim = sets[0].dim
    for s in sets[1:]:
        if s.dim != dim:
            raise DimensionMismatch(
                f"sets of dimension {dim} and {s.dim} are incompatible")
    return dim


def _check_cap(count: int, cap: int) -> None:
    if count > cap:
        raise CapExceeded(
            f"constructed set would have {count} members, exceeding the "
            f"cap of {cap}", cap=cap)


def set_product(psi: MatrixSet, sigma: MatrixSet,
                cap: int = MEMBER_CAP) -> MatrixSet:
    """All pairwise products ``{A @ B : A in psi, B in sigma}``."""
    _check_dims(psi, sigma)
    _check_cap(len(psi) * len(sigma), cap)
    n = psi.dim
    prod = np.matmul(psi.members[:, None], sigma.members[None, :])
    return MatrixSet(prod.reshape(-1, n, n))


def set_power(sigma: MatrixSet, m: int, cap: int = MEMBER_CAP) -> MatrixSet:
    """All length-``m`` products of members of ``sigma``, left to right."""
    if m < 1:
        raise ValueError("set power requires m >= 1")
    _check_cap(len(sigma) ** m, cap)
    out = sigma
    for _ in range(m - 1):
        out = set_product(out, sigma, cap=cap)
    return out


def set_hadamard_power(psi: MatrixSet, t: float) -> MatrixSet:
    """Entrywise power applied to every member."""
    if not t > 0:
        raise ValueError(f"Hadamard power requires t > 0, got {t}")
    out = psi.members ** t
    if not np.all(np.isfinite(out)):
        raise ValueError("Hadamard power overflowed to infinity")
    return MatrixSet(out)


def set_hadamard_mean(sets, w: WeightVector,
                      cap: int = MEMBER_CAP) -> MatrixSet:
    """Weighted Hadamard geometric mean of sets: all entrywise products
    ``A_1**w_1 * ... * A_m**w_m`` over member tuples.

    The convex regime is always admissible; the super regime relies on the
    matrix-mode theorems and is accepted as declared by the caller.
    """
    sets = list(sets)
    if len(sets) != len(w):
        raise DimensionMismatch(
            f"{len(sets)} sets but {len(w)} weights")
    _check_dims(*sets)
    count = 1
    for s in sets:
        count *= len(s)
    _check_cap(count, cap)
    n = sets[0].dim
    batch = sets[0].members ** w.weights[0]
    for s, wk in zip(sets[1:], w.weights[1:]):
        powered = s.members ** wk
        batch = (batch[:, None] * powered[None, :]).reshape(-1, n, n)
    return MatrixSet(batch)


def set_sum(psi: MatrixSet, sigma: MatrixSet,
            cap: int = MEMBER_CAP) -> MatrixSet:
    """All pairwise sums ``{A + B : A in psi, B in sigma}``."""
    _check_dims(psi, sigma)
    _check_cap(len(psi) * len(sigma), cap)
    n = psi.dim
    out = psi.members[:, None] + sigma.members[None, :]
    return MatrixSet(out.reshape(-1, n, n))


def set_adjoint(psi: MatrixSet) -> MatrixSet:
    """Elementwise transpose."""
    return MatrixSet(np.ascontiguousarray(psi.members.transpose(0, 2, 1)),
                     name=psi.name)


def cyclic_factor(sets, j: int, cap: int = MEMBER_CAP) -> MatrixSet:
    """Cyclic product ``Psi_j ... Psi_m Psi_1 ... Psi_{j-1}`` (1-indexed)."""
    sets = list(sets)
    m = len(sets)
    if not 1 <= j <= m:
        raise ValueError(f"cyclic index {j} out of range 1..{m}")
    order = sets[j - 1:] + sets[:j - 1]
    out = order[0]
    for s in order[1:]:
        out = set_product(out, s, cap=cap)
    return out


def symmetrize_ab(psi: MatrixSet, alpha: float, beta: float,
                  cap: int = MEMBER_CAP) -> MatrixSet:
    """Weighted geometric symmetrization
    ``{A**(alpha) o (B^T)**(beta) : A, B in psi}`` for ``alpha + beta >= 1``.

    A zero exponent drops the corresponding factor entirely (the missing
    factor convention), so ``(1, 0)`` returns ``psi`` and ``(0, 1)`` its
    adjoint.
    """
    if alpha < 0 or beta < 0:
        raise ValueError("exponents must be nonnegative")
    if alpha + beta < 1.0 - _REGIME_TOL:
        raise RegimeError(
            f"symmetrization requires alpha + beta >= 1, got "
            f"{alpha} + {beta}")
    if beta == 0:
        return set_hadamard_power(psi, alpha) if alpha != 1 else psi
    if alpha == 0:
        adj = set_adjoint(psi)
        return set_hadamard_power(adj, beta) if beta != 1 else adj
    _check_cap(len(psi) ** 2, cap)
    n = psi.dim
    left = psi.members ** alpha
    right = psi.members.transpose(0, 2, 1) ** beta
    out = (left[:, None] * right[None, :]).reshape(-1, n, n)
    return MatrixSet(out)


def symmetrize(psi: MatrixSet, alpha: float,
               cap: int = MEMBER_CAP) -> MatrixSet:
    """Geometric symmetrization ``{A**(alpha) o (B^T)**(1-alpha)}`` for
    ``alpha`` in [0, 1]; endpoints follow the conventions ``S_1 = psi`` and
    ``S_0 = psi^T``."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    return symmetrize_ab(psi, alpha, 1.0 - alpha, cap=cap)


def canonicalize(psi: MatrixSet) -> MatrixSet:
    """Members sorted lexicographically on their entries (row-major)."""
    flat = psi.members.reshape(len(psi), -1)
    order = np.lexsort(np.flipud(flat.T))
    return MatrixSet(psi.members[order], name=psi.name)


def dedupe(psi: MatrixSet, tol: float = 0.0) -> MatrixSet:
    """Remove members within entrywise max-distance ``tol`` of a kept one.

    ``tol = 0`` removes bit-identical duplicates only.  The result is in
    canonical (lexicographic) order.
    """
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    flat = psi.members.reshape(len(psi), -1)
    uniq = np.unique(flat, axis=0)
    if tol > 0:
        kept: list[np.ndarray] = []
        for row in uniq:
            if not any(np.max(np.abs(row - k)) <= tol for k in kept):
                kept.append(row)
        uniq = np.stack(kept)
    n = psi.dim
    return MatrixSet(uniq.reshape(-1, n, n), name=psi.name)


def sets_equal(a: MatrixSet, b: MatrixSet) -> bool:
    """Bit-exact set equality after dedupe and canonical ordering."""
    da, db = dedupe(a), dedupe(b)
    return da.members.shape == db.members.shape and np.array_equal(
        da.members, db.members)
