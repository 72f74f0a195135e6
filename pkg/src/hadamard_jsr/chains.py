"""Evaluation of every inequality/equality chain as bracketed links.

Each chain is an ordered list of links; a link's value is a product of
set-radius brackets raised to nonnegative exponents.  Verification checks
``lower(L_i) <= upper(L_j) + tol`` for every ordered pair inside a chain
segment, and bracket overlap for equality links.  A bracket-based check can
never prove a true theorem false, so a "violated" verdict flags an
implementation bug and must be loud.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch
from .matrices import (DEFAULT_TOL, ROW_SUM, RadiusBracket, check_matrix,
                       hadamard_product, spectral_radius_bracket,
                       weighted_hadamard_geometric_mean)
from .radius import radius_bracket_set, symmetrization_sequence, \
    symmetrization_sequence_ab
from .sets import (CONVEX, SUPER, MEMBER_CAP, MatrixSet, WeightVector,
                   cyclic_factor, set_adjoint, set_hadamard_mean,
                   set_hadamard_power, set_power, set_product, set_sum,
                   symmetrize, symmetrize_ab, uniform_weights)

VERIFIED = "verified"
INDETERMINATE = "indeterminate"
VIOLATED = "violated"

LEQ = "<="
EQ = "="
END = "end"

VERDICT_TOL = 1e-9

DEFAULT_CHAIN_DEPTH = 8
DEFAULT_WORD_BUDGET = 20_000

THEOREM_IDS = (
    "zhan-chain", "powers", "refin", "folge", "kathyprop-eq",
    "kathyprop-mat", "finally", "kathyth1", "equalities-joint", "kathyth2",
    "finally2", "sym-mono", "geom-sym", "sym-mat", "geom-sym-mat",
)


@dataclass(frozen=True)
class ChainLink:
    label: str
    bracket: RadiusBracket
    relation_to_next: str  # "<=", "=", or "end"


@dataclass
class ChainReport:
    theorem_id: str
    links: tuple[ChainLink, ...]
    verdict: str
    margins: tuple[float, ...]
    notes: tuple[str, ...] = ()
    context: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "theorem_id": self.theorem_id,
            "links": [
                {"label": l.label,
                 "bracket": {"lo": l.bracket.lo, "hi": l.bracket.hi,
                             "depth": l.bracket.depth,
                             "norm": l.bracket.norm},
                 "relation_to_next": l.relation_to_next}
                for l in self.links
            ],
            "verdict": self.verdict,
            "margins": list(self.margins),
            "notes": list(self.notes),
            "context": self.context,
        }


class _Evaluator:
    """Caches set-radius brackets across the links of one chain."""

    def __init__(self, depth: int, norm: str, tol: float,
                 budget: int, cap: int):
        self.depth = depth
        self.norm = norm
        self.tol = tol
        self.budget = budget
        self.cap = cap
        self._cache: dict = {}

    def set_bracket(self, ms: MatrixSet) -> RadiusBracket:
        key = (ms.dim, ms.members.tobytes())
        if key not in self._cache:
            self._cache[key] = radius_bracket_set(
                ms, self.depth, self.norm, tol=self.tol, cap=self.cap,
                word_budget=self.budget)
        return self._cache[key]

    def link(self, label: str, factors, relation: str) -> ChainLink:
        """``factors``: list of (MatrixSet, exponent) with exponent >= 0."""
        lo, hi = 1.0, 1.0
        for ms, e in factors:
            b = self.set_bracket(ms).powered(e)
            lo *= b.lo
            hi *= b.hi
        return ChainLink(label, RadiusBracket(min(lo, hi), hi, self.depth,
                                              self.norm), relation)

    def context(self, **extra) -> dict:
        ctx = {"depth": self.depth, "norm": self.norm, "tol": self.tol,
               "word_budget": self.budget, "member_cap": self.cap}
        ctx.update(extra)
        return ctx


def _segments(links):
    seg, out = [], []
    for link in links:
        seg.append(link)
        if link.relation_to_next == END:
            out.append(seg)
            seg = []
    if seg:
        out.append(seg)
    return out


def assess(links, tol: float = VERDICT_TOL):
    """Compute (verdict, margins) for an ordered list of links.

    Within each segment every ordered pair must satisfy the transitive
    ``<=``; adjacent equality links must additionally overlap (or be
    declared indeterminate when their widths exceed the gap).
    """
    verdict = VERIFIED
    margins = []
    for seg in _segments(links):
        for i, link in enumerate(seg):
            rel = link.relation_to_next
            if rel == END or i == len(seg) - 1:
                continue
            if rel == LEQ:
                margin = min(seg[j].bracket.hi for j in range(i + 1, len(seg))
                             ) - link.bracket.lo
            else:  # equality: signed overlap with the next link
                nxt = seg[i + 1].bracket
                cur = link.bracket
                margin = min(cur.hi, nxt.hi) - max(cur.lo, nxt.lo)
            margins.append(float(margin))
        for i in range(len(seg)):
            for j in range(i + 1, len(seg)):
                if seg[i].bracket.lo > seg[j].bracket.hi + tol:
                    verdict = VIOLATED
        for i in range(len(seg) - 1):
            if seg[i].relation_to_next != EQ:
                continue
            a, b = seg[i].bracket, seg[i + 1].bracket
            gap = max(a.lo - b.hi, b.lo - a.hi)
            if gap > tol:
                if a.width >= gap or b.width >= gap:
                    if verdict != VIOLATED:
                        verdict = INDETERMINATE
                else:
                    verdict = VIOLATED
    return verdict, tuple(margins)


def _single_link(label: str, bracket: RadiusBracket,
                 relation: str) -> ChainLink:
    return ChainLink(label, bracket, relation)


def _mul_brackets(parts) -> RadiusBracket:
    lo, hi, depth, norm = 1.0, 1.0, 1, ROW_SUM
    for b, e in parts:
        p = b.powered(e)
        lo *= p.lo
        hi *= p.hi
        depth = max(depth, b.depth)
        norm = b.norm
    return RadiusBracket(min(lo, hi), hi, depth, norm)


# ---------------------------------------------------------------------------
# single-matrix chains

def chain_zhan(a, b, beta: float, *, tol: float = DEFAULT_TOL) -> ChainReport:
    """Hadamard-product spectral radius chain for a pair of nonnegative
    matrices, plus the transposed-product branch."""
    a, b = check_matrix(a), check_matrix(b)
    if a.shape != b.shape:
        raise DimensionMismatch("matrices must share a dimension")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    ab = a @ b
    ba = b @ a
    r = lambda m: spectral_radius_bracket(m, tol=tol)
    links = (
        _single_link("r(A∘B)", r(hadamard_product(a, b)), LEQ),
        _single_link("r((A∘A)(B∘B))^(1/2)",
                     r(hadamard_product(a, a) @ hadamard_product(b, b))
                     .powered(0.5), LEQ),
        _single_link("r(AB∘AB)^(β/2)·r(BA∘BA)^((1-β)/2)",
                     _mul_brackets([(r(hadamard_product(ab, ab)), beta / 2),
                                    (r(hadamard_product(ba, ba)),
                                     (1 - beta) / 2)]), LEQ),
        _single_link("r(AB)", r(ab), END),
        _single_link("r(A∘B)", r(hadamard_product(a, b)), LEQ),
        _single_link("r(AB∘BA)^(1/2)",
                     r(hadamard_product(ab, ba)).powered(0.5), LEQ),
        _single_link("r(AB)", r(ab), END),
    )
    verdict, margins = assess(links)
    return ChainReport("zhan-chain", links, verdict, margins,
                       context={"beta": beta, "tol": tol})


def chain_huang(mats, *, tol: float = DEFAULT_TOL) -> ChainReport:
    """Cyclic-factor refinement of the m-fold Hadamard-mean inequality."""
    mats = [check_matrix(m) for m in mats]
    m = len(mats)
    if m < 1:
        raise ValueError("need at least one matrix")
    for x in mats[1:]:
        if x.shape != mats[0].shape:
            raise DimensionMismatch("matrices must share a dimension")
    w = [1.0 / m] * m
    cyclic = []
    for j in range(m):
        p = mats[j]
        for x in mats[j + 1:] + mats[:j]:
            p = p @ x
        cyclic.append(p)
    full = cyclic[0]
    r = lambda x: spectral_radius_bracket(x, tol=tol)
    links = (
        _single_link("r(A1^(1/m)∘…∘Am^(1/m))",
                     r(weighted_hadamard_geometric_mean(mats, w)), LEQ),
        _single_link("r(P1^(1/m)∘…∘Pm^(1/m))^(1/m)",
                     r(weighted_hadamard_geometric_mean(cyclic, w))
                     .powered(1.0 / m), LEQ),
        _single_link("r(A1⋯Am)^(1/m)", r(full).powered(1.0 / m), END),
    )
    verdict, margins = assess(links)
    return ChainReport("zhan-chain", links, verdict, margins,
                       context={"m": m, "tol": tol})


# ---------------------------------------------------------------------------
# set chains

def _names(sets):
    return [s.name or f"Ψ{i + 1}" for i, s in enumerate(sets)]


def chain_powers(sets, w: WeightVector, n: int,
                 depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                 tol: float = DEFAULT_TOL, budget: int = DEFAULT_WORD_BUDGET,
                 cap: int = MEMBER_CAP) -> ChainReport:
    """Hadamard-mean vs n-th-power mean vs radius-product chain, plus the
    uniform-weight product branch."""
    sets = list(sets)
    if w.regime != CONVEX:
        raise ValueError("this chain requires convex weights")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    names = _names(sets)
    m = len(sets)
    mean = set_hadamard_mean(sets, w, cap=cap)
    powered = set_hadamard_mean([set_power(s, n, cap=cap) for s in sets],
                                w, cap=cap)
    umean = set_hadamard_mean(sets, uniform_weights(m), cap=cap)
    prod = sets[0]
    for s in sets[1:]:
        prod = set_product(prod, s, cap=cap)
    wtxt = ",".join(f"{x:g}" for x in w.weights)
    links = (
        ev.link(f"r(∘-mean({','.join(names)}; {wtxt}))", [(mean, 1.0)], LEQ),
        ev.link(f"r(∘-mean of {n}-th powers)^(1/{n})",
                [(powered, 1.0 / n)], LEQ),
        ev.link("Π r(Ψi)^αi", list(zip(sets, w.weights)), END),
        ev.link("r(∘-mean uniform)", [(umean, 1.0)], LEQ),
        ev.link(f"r(Ψ1⋯Ψ{m})^(1/{m})", [(prod, 1.0 / m)], END),
    )
    verdict, margins = assess(links)
    return ChainReport("powers", links, verdict, margins,
                       context=ev.context(n=n, weights=list(w.weights)))


def chain_refin(psi: MatrixSet, sigma: MatrixSet, beta: float,
                depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                tol: float = DEFAULT_TOL, budget: int = DEFAULT_WORD_BUDGET,
                cap: int = MEMBER_CAP) -> ChainReport:
    """Pairwise refinement chains with the links proven equal marked "="."""
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    half = WeightVector((0.5, 0.5))
    ps = set_product(psi, sigma, cap=cap)
    sp = set_product(sigma, psi, cap=cap)
    mean_psig = set_hadamard_mean([psi, sigma], half, cap=cap)
    mean_ps_sp = set_hadamard_mean([ps, sp], half, cap=cap)
    mean_ps_ps = set_hadamard_mean([ps, ps], half, cap=cap)
    mean_sp_sp = set_hadamard_mean([sp, sp], half, cap=cap)
    mean_pp = set_hadamard_mean([psi, psi], half, cap=cap)
    mean_ss = set_hadamard_mean([sigma, sigma], half, cap=cap)
    prod_means = set_product(mean_pp, mean_ss, cap=cap)
    links = (
        # first chain, scaled to the r(ΨΣ) level (exponent 2 on every link)
        ev.link("r(Ψ^(1/2)∘Σ^(1/2))²", [(mean_psig, 2.0)], LEQ),
        ev.link("r((ΨΣ)^(1/2)∘(ΣΨ)^(1/2))", [(mean_ps_sp, 1.0)], LEQ),
        ev.link("r(ΨΣ∘-sq)^(1/2)·r(ΣΨ∘-sq)^(1/2)",
                [(mean_ps_ps, 0.5), (mean_sp_sp, 0.5)], EQ),
        ev.link("r(ΨΣ)", [(ps, 1.0)], END),
        # second chain with the equality upgrades
        ev.link("r(Ψ^(1/2)∘Σ^(1/2))²", [(mean_psig, 2.0)], LEQ),
        ev.link("r((Ψ∘-sq)(Σ∘-sq))", [(prod_means, 1.0)], EQ),
        ev.link("r(ΨΣ∘-sq)^β·r(ΣΨ∘-sq)^(1-β)",
                [(mean_ps_ps, beta), (mean_sp_sp, 1.0 - beta)], EQ),
        ev.link("r(ΨΣ)", [(ps, 1.0)], END),
    )
    verdict, margins = assess(links)
    return ChainReport("refin", links, verdict, margins,
                       context=ev.context(beta=beta))


def chain_folge(psi: MatrixSet, t: float, n: int,
                depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                tol: float = DEFAULT_TOL, budget: int = DEFAULT_WORD_BUDGET,
                cap: int = MEMBER_CAP) -> ChainReport:
    """Entrywise-power chain ``r(Ψ^(t)) <= r((Ψ^n)^(t))^(1/n) <= r(Ψ)^t``
    for t >= 1."""
    if t < 1:
        raise ValueError("t must be >= 1")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    links = (
        ev.link(f"r(Ψ^({t:g}))", [(set_hadamard_power(psi, t), 1.0)], LEQ),
        ev.link(f"r((Ψ^{n})^({t:g}))^(1/{n})",
                [(set_hadamard_power(set_power(psi, n, cap=cap), t),
                  1.0 / n)], LEQ),
        ev.link(f"r(Ψ)^{t:g}", [(psi, t)], END),
    )
    verdict, margins = assess(links)
    return ChainReport("folge", links, verdict, margins,
                       context=ev.context(t=t, n=n))


def chain_kathyprop_eq(psi: MatrixSet, sigma: MatrixSet, w: WeightVector,
                       beta: float, depth: int = DEFAULT_CHAIN_DEPTH,
                       norm: str = ROW_SUM, *, tol: float = DEFAULT_TOL,
                       budget: int = DEFAULT_WORD_BUDGET,
                       cap: int = MEMBER_CAP) -> ChainReport:
    """Equality chains: the self-mean equality and the pairwise-product
    equality chain."""
    if w.regime != CONVEX:
        raise ValueError("the self-mean equality requires convex weights")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    m = len(w)
    half = WeightVector((0.5, 0.5))
    self_mean = set_hadamard_mean([psi] * m, w, cap=cap)
    ps = set_product(psi, sigma, cap=cap)
    sp = set_product(sigma, psi, cap=cap)
    mean_pp = set_hadamard_mean([psi, psi], half, cap=cap)
    mean_ss = set_hadamard_mean([sigma, sigma], half, cap=cap)
    links = (
        ev.link("r(Ψ)", [(psi, 1.0)], EQ),
        ev.link("r(Ψ^(α1)∘…∘Ψ^(αm))", [(self_mean, 1.0)], END),
        ev.link("r(ΨΣ)", [(ps, 1.0)], EQ),
        ev.link("r((Ψ∘-sq)(Σ∘-sq))",
                [(set_product(mean_pp, mean_ss, cap=cap), 1.0)], EQ),
        ev.link("r(ΨΣ∘-sq)^β·r(ΣΨ∘-sq)^(1-β)",
                [(set_hadamard_mean([ps, ps], half, cap=cap), beta),
                 (set_hadamard_mean([sp, sp], half, cap=cap), 1.0 - beta)],
                END),
    )
    verdict, margins = assess(links)
    return ChainReport("kathyprop-eq", links, verdict, margins,
                       context=ev.context(beta=beta, weights=list(w.weights)))


def chain_kathyprop_mat(psi: MatrixSet, m: int, alpha: float, n: int,
                        depth: int = DEFAULT_CHAIN_DEPTH,
                        norm: str = ROW_SUM, *, tol: float = DEFAULT_TOL,
                        budget: int = DEFAULT_WORD_BUDGET,
                        cap: int = MEMBER_CAP) -> ChainReport:
    """Matrix-mode chains for integer and real entrywise powers."""
    if m < 1 or alpha < 1:
        raise ValueError("need m >= 1 and alpha >= 1")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    ones = WeightVector((1.0,) * m, SUPER) if m > 1 else \
        WeightVector((1.0,), CONVEX)
    psin = set_power(psi, n, cap=cap)
    links = [
        ev.link(f"r(Ψ^({m}))", [(set_hadamard_power(psi, float(m)), 1.0)],
                LEQ),
        ev.link(f"r(Ψ∘⋯∘Ψ [{m}×])",
                [(set_hadamard_mean([psi] * m, ones, cap=cap), 1.0)], LEQ),
        ev.link(f"r(Ψ^{n}∘⋯∘Ψ^{n})^(1/{n})",
                [(set_hadamard_mean([psin] * m, ones, cap=cap), 1.0 / n)],
                LEQ),
        ev.link(f"r(Ψ)^{m}", [(psi, float(m))], END),
    ]
    notes = []
    if alpha > 1:
        wa = WeightVector((alpha - 1.0, 1.0), SUPER)
        links += [
            ev.link(f"r(Ψ^({alpha:g}))",
                    [(set_hadamard_power(psi, alpha), 1.0)], LEQ),
            ev.link(f"r(Ψ^({alpha - 1:g})∘Ψ)",
                    [(set_hadamard_mean([psi, psi], wa, cap=cap), 1.0)],
                    LEQ),
            ev.link(f"r((Ψ^{n})^({alpha - 1:g})∘Ψ^{n})^(1/{n})",
                    [(set_hadamard_mean([psin, psin], wa, cap=cap),
                      1.0 / n)], LEQ),
            ev.link(f"r(Ψ)^{alpha:g}", [(psi, alpha)], END),
        ]
    else:
        notes.append("alpha = 1: real-power chain degenerates to identity "
                     "links and is skipped")
    links = tuple(links)
    verdict, margins = assess(links)
    return ChainReport("kathyprop-mat", links, verdict, margins,
                       notes=tuple(notes),
                       context=ev.context(m=m, alpha=alpha, n=n))


def _row_mean(row, w, cap):
    return set_hadamard_mean(row, w, cap=cap)


def _column_combine(grid, j, combine, cap):
    col = [row[j] for row in grid]
    out = col[0]
    for s in col[1:]:
        out = combine(out, s)
    return out


def _chain_grid(theorem_id, grid, w, n, depth, norm, tol, budget, cap,
                mode, row_combine, col_combine, sum_version):
    grid = [list(row) for row in grid]
    k, m = len(grid), len(grid[0])
    if any(len(row) != m for row in grid):
        raise DimensionMismatch("grid rows must have equal length")
    if len(w) != m:
        raise DimensionMismatch(f"{m} columns but {len(w)} weights")
    if mode == "kernel" and w.regime != CONVEX:
        raise ValueError("kernel mode requires convex weights")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    row_means = [_row_mean(row, w, cap) for row in grid]
    lhs = row_means[0]
    for s in row_means[1:]:
        lhs = row_combine(lhs, s)
    cols = [_column_combine(grid, j, col_combine, cap) for j in range(m)]
    col_mean = set_hadamard_mean(cols, w, cap=cap)
    col_mean_n = set_hadamard_mean([set_power(c, n, cap=cap) for c in cols],
                                   w, cap=cap)
    opname = "+" if sum_version else "⋯"
    links = (
        ev.link(f"r({opname}-combined row means)", [(lhs, 1.0)], LEQ),
        ev.link("r(∘-mean of column combinations)", [(col_mean, 1.0)], LEQ),
        ev.link(f"r(∘-mean of {n}-th powers)^(1/{n})",
                [(col_mean_n, 1.0 / n)], LEQ),
        ev.link("Π r(column)^αj", list(zip(cols, w.weights)), END),
    )
    verdict, margins = assess(links)
    return ChainReport(theorem_id, links, verdict, margins,
                       context=ev.context(k=k, m=m, n=n, mode=mode,
                                          weights=list(w.weights)))


def chain_finally(grid, w: WeightVector, n: int,
                  depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                  tol: float = DEFAULT_TOL, budget: int = DEFAULT_WORD_BUDGET,
                  cap: int = MEMBER_CAP, mode: str = "kernel") -> ChainReport:
    """Grid chain with ordinary products across rows."""
    comb = lambda a, b: set_product(a, b, cap=cap)
    return _chain_grid("finally", grid, w, n, depth, norm, tol, budget, cap,
                       mode, comb, comb, sum_version=False)


def chain_finally2(grid, w: WeightVector, n: int,
                   depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                   tol: float = DEFAULT_TOL,
                   budget: int = DEFAULT_WORD_BUDGET,
                   cap: int = MEMBER_CAP, mode: str = "kernel") -> ChainReport:
    """Grid chain with sums across rows."""
    add = lambda a, b: set_sum(a, b, cap=cap)
    prod = lambda a, b: set_product(a, b, cap=cap)
    grid = [list(row) for row in grid]
    k, m = len(grid), len(grid[0])
    if mode == "kernel" and w.regime != CONVEX:
        raise ValueError("kernel mode requires convex weights")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    row_means = [_row_mean(row, w, cap) for row in grid]
    lhs = row_means[0]
    for s in row_means[1:]:
        lhs = add(lhs, s)
    cols = [_column_combine(grid, j, add, cap) for j in range(m)]
    col_mean = set_hadamard_mean(cols, w, cap=cap)
    col_mean_n = set_hadamard_mean([set_power(c, n, cap=cap) for c in cols],
                                   w, cap=cap)
    links = (
        ev.link("r(sum of row means)", [(lhs, 1.0)], LEQ),
        ev.link("r(∘-mean of column sums)", [(col_mean, 1.0)], LEQ),
        ev.link(f"r(∘-mean of {n}-th powers of column sums)^(1/{n})",
                [(col_mean_n, 1.0 / n)], LEQ),
        ev.link("Π r(column sum)^αj", list(zip(cols, w.weights)), END),
    )
    verdict, margins = assess(links)
    return ChainReport("finally2", links, verdict, margins,
                       context=ev.context(k=k, m=m, n=n, mode=mode,
                                          weights=list(w.weights)))


def chain_kathyth1(sets, n: int, depth: int = DEFAULT_CHAIN_DEPTH,
                   norm: str = ROW_SUM, *, tol: float = DEFAULT_TOL,
                   budget: int = DEFAULT_WORD_BUDGET,
                   cap: int = MEMBER_CAP) -> ChainReport:
    """Cyclic-factor refinement at the set level, uniform weights 1/m."""
    sets = list(sets)
    m = len(sets)
    ev = _Evaluator(depth, norm, tol, budget, cap)
    w = uniform_weights(m)
    phis = [cyclic_factor(sets, j, cap=cap) for j in range(1, m + 1)]
    links = (
        ev.link("r(∘-mean of Ψj)",
                [(set_hadamard_mean(sets, w, cap=cap), 1.0)], LEQ),
        ev.link(f"r(∘-mean of Φj)^(1/{m})",
                [(set_hadamard_mean(phis, w, cap=cap), 1.0 / m)], LEQ),
        ev.link(f"r(∘-mean of Φj^{n})^(1/{n * m})",
                [(set_hadamard_mean(
                    [set_power(p, n, cap=cap) for p in phis], w, cap=cap),
                  1.0 / (n * m))], LEQ),
        ev.link(f"r(Ψ1⋯Ψ{m})^(1/{m})", [(phis[0], 1.0 / m)], END),
    )
    verdict, margins = assess(links)
    return ChainReport("kathyth1", links, verdict, margins,
                       context=ev.context(m=m, n=n))


def chain_equalities_joint(sets, w: WeightVector, beta: float,
                           depth: int = DEFAULT_CHAIN_DEPTH,
                           norm: str = ROW_SUM, *, tol: float = DEFAULT_TOL,
                           budget: int = DEFAULT_WORD_BUDGET,
                           cap: int = MEMBER_CAP) -> ChainReport:
    """Three-member equality chain through split entrywise powers."""
    sets = list(sets)
    m = len(sets)
    if w.regime != CONVEX or len(w) != m:
        raise ValueError("need convex weights, one per set")
    if not 0.0 <= beta <= 1.0:
        raise ValueError("beta must lie in [0, 1]")
    ev = _Evaluator(depth, norm, tol, budget, cap)

    def split(s):
        if beta in (0.0, 1.0):
            return s
        return set_hadamard_mean(
            [s, s], WeightVector((beta, 1.0 - beta)), cap=cap)

    prod = sets[0]
    for s in sets[1:]:
        prod = set_product(prod, s, cap=cap)
    split_prod = split(sets[0])
    for s in sets[1:]:
        split_prod = set_product(split_prod, split(s), cap=cap)
    phis = [cyclic_factor(sets, j, cap=cap) for j in range(1, m + 1)]
    links = (
        ev.link(f"r(Ψ1⋯Ψ{m})", [(prod, 1.0)], EQ),
        ev.link("r(Π (Ψj^(β)∘Ψj^(1-β)))", [(split_prod, 1.0)], EQ),
        ev.link("Π r(Φj^(β)∘Φj^(1-β))^αj",
                [(split(p), a) for p, a in zip(phis, w.weights)], END),
    )
    verdict, margins = assess(links)
    return ChainReport("equalities-joint", links, verdict, margins,
                       context=ev.context(beta=beta, m=m,
                                          weights=list(w.weights)))


def chain_kathyth2(sets, alpha: float, n: int,
                   depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                   tol: float = DEFAULT_TOL,
                   budget: int = DEFAULT_WORD_BUDGET,
                   cap: int = MEMBER_CAP) -> ChainReport:
    """Matrix-mode cyclic chains for entrywise power alpha >= 1/m; the
    alpha >= 1 branches are skipped (with a note) otherwise."""
    sets = list(sets)
    m = len(sets)
    if alpha < 1.0 / m:
        raise ValueError(f"alpha must be >= 1/m = {1.0 / m}")
    ev = _Evaluator(depth, norm, tol, budget, cap)
    wa = WeightVector((alpha,) * m, SUPER) if m * alpha >= 1 else None
    phis = [cyclic_factor(sets, j, cap=cap) for j in range(1, m + 1)]
    prod = phis[0]
    pow_sets = [set_hadamard_power(s, alpha * m) for s in sets]
    pow_prod = pow_sets[0]
    for s in pow_sets[1:]:
        pow_prod = set_product(pow_prod, s, cap=cap)
    prod_n = set_power(prod, n, cap=cap)
    lhs = ev.link("r(Ψ1^(α)∘⋯∘Ψm^(α))",
                  [(set_hadamard_mean(sets, wa, cap=cap), 1.0)], LEQ)
    links = [
        lhs,
        ev.link(f"r(Φ1^(α)∘⋯)^(1/{m})",
                [(set_hadamard_mean(phis, wa, cap=cap), 1.0 / m)], LEQ),
        ev.link(f"r((Φj^{n})^(α) ∘-mean)^(1/{m * n})",
                [(set_hadamard_mean(
                    [set_power(p, n, cap=cap) for p in phis], wa, cap=cap),
                  1.0 / (m * n))], LEQ),
        ev.link(f"r(Ψ1⋯Ψm)^{alpha:g}", [(prod, alpha)], END),
        # entrywise-power product route
        ChainLink(lhs.label, lhs.bracket, LEQ),
        ev.link(f"r(Ψ1^(αm)⋯Ψm^(αm))^(1/{m})", [(pow_prod, 1.0 / m)], LEQ),
        ev.link(f"r((Ψ1⋯Ψm)^(αm))^(1/{m})",
                [(set_hadamard_power(prod, alpha * m), 1.0 / m)], LEQ),
        ev.link(f"r(((Ψ1⋯Ψm)^{n})^(αm))^(1/{n * m})",
                [(set_hadamard_power(prod_n, alpha * m), 1.0 / (n * m))],
                LEQ),
        ev.link(f"r(Ψ1⋯Ψm)^{alpha:g}", [(prod, alpha)], END),
    ]
    notes = []
    if alpha >= 1.0:
        phis_n = [set_power(p, n, cap=cap) for p in phis]
        links += [
            ChainLink(lhs.label, lhs.bracket, LEQ),
            ev.link(f"r(∘-mean of Φj^(α))^(1/{m})",
                    [(set_hadamard_mean(phis, wa, cap=cap), 1.0 / m)], LEQ),
            ev.link(f"r(∘-mean of (Φj^{n})^(α))^(1/{m * n})",
                    [(set_hadamard_mean(phis_n, wa, cap=cap),
                      1.0 / (m * n))], LEQ),
            ev.link(f"(Π r((Φj^{n})^({m})))^(α/{m * m * n})",
                    [(set_hadamard_power(p, float(m)),
                      alpha / (m * m * n)) for p in phis_n], LEQ),
            ev.link(f"r(Ψ1⋯Ψm)^{alpha:g}", [(prod, alpha)], END),
        ]
        sigmas = [cyclic_factor(pow_sets, j, cap=cap)
                  for j in range(1, m + 1)]
        um = uniform_weights(m)
        links += [
            ChainLink(lhs.label, lhs.bracket, LEQ),
            ev.link(f"r(∘-mean of Σj^(1/{m}))^(1/{m})",
                    [(set_hadamard_mean(sigmas, um, cap=cap), 1.0 / m)],
                    LEQ),
            ev.link(f"r(∘-mean of (Σj^{n})^(1/{m}))^(1/{m * n})",
                    [(set_hadamard_mean(
                        [set_power(s, n, cap=cap) for s in sigmas], um,
                        cap=cap), 1.0 / (m * n))], LEQ),
            ev.link(f"r(Ψ1^(αm)⋯Ψm^(αm))^(1/{m})",
                    [(pow_prod, 1.0 / m)], LEQ),
            ev.link(f"r((Ψ1⋯Ψm)^(αm))^(1/{m})",
                    [(set_hadamard_power(prod, alpha * m), 1.0 / m)], LEQ),
            ev.link(f"r(((Ψ1⋯Ψm)^{n})^(αm))^(1/{n * m})",
                    [(set_hadamard_power(prod_n, alpha * m),
                      1.0 / (n * m))], LEQ),
            ev.link(f"r(Ψ1⋯Ψm)^{alpha:g}", [(prod, alpha)], END),
        ]
    else:
        notes.append("skipped: hypothesis alpha >= 1 not met for the "
                     "diagonal-power and cyclic-power branches")
    links = tuple(links)
    verdict, margins = assess(links)
    return ChainReport("kathyth2", links, verdict, margins,
                       notes=tuple(notes),
                       context=ev.context(alpha=alpha, m=m, n=n))


def chain_geom_sym(sets, alpha: float, n: int,
                   depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                   tol: float = DEFAULT_TOL,
                   budget: int = DEFAULT_WORD_BUDGET,
                   cap: int = MEMBER_CAP,
                   ab: tuple[float, float] | None = None) -> ChainReport:
    """Geometric-symmetrization product and sum chains; ``ab`` switches to
    the weighted (alpha, beta) matrix-mode variant."""
    sets = list(sets)
    m = len(sets)
    if ab is None:
        if not 0.0 <= alpha <= 1.0:
            raise ValueError("alpha must lie in [0, 1] in kernel mode")
        a, b = alpha, 1.0 - alpha
        theorem_id = "geom-sym"
        sym = lambda s: symmetrize(s, a, cap=cap)
    else:
        a, b = ab
        theorem_id = "geom-sym-mat"
        sym = lambda s: symmetrize_ab(s, a, b, cap=cap)

    def mix(f, g_adj):
        """F^(a) ∘ (G*)^(b) with zero exponents dropping the factor."""
        if b == 0:
            return set_hadamard_power(f, a) if a != 1 else f
        if a == 0:
            return set_hadamard_power(g_adj, b) if b != 1 else g_adj
        return set_hadamard_mean(
            [f, g_adj], WeightVector((a, b), SUPER if a + b > 1 else CONVEX),
            cap=cap)

    ev = _Evaluator(depth, norm, tol, budget, cap)
    fwd = sets[0]
    for s in sets[1:]:
        fwd = set_product(fwd, s, cap=cap)
    bwd = sets[-1]
    for s in reversed(sets[:-1]):
        bwd = set_product(bwd, s, cap=cap)
    sym_prod = sym(sets[0])
    for s in sets[1:]:
        sym_prod = set_product(sym_prod, sym(s), cap=cap)
    total = sets[0]
    for s in sets[1:]:
        total = set_sum(total, s, cap=cap)
    sym_sum = sym(sets[0])
    for s in sets[1:]:
        sym_sum = set_sum(sym_sum, sym(s), cap=cap)
    links = (
        ev.link("r(S(Ψ1)⋯S(Ψm))", [(sym_prod, 1.0)], LEQ),
        ev.link("r((Ψ1⋯Ψm)^(α)∘((Ψm⋯Ψ1)*)^(β))",
                [(mix(fwd, set_adjoint(bwd)), 1.0)], LEQ),
        ev.link(f"r(n-th power mix)^(1/{n})",
                [(mix(set_power(fwd, n, cap=cap),
                      set_adjoint(set_power(bwd, n, cap=cap))), 1.0 / n)],
                LEQ),
        ev.link("r(Ψ1⋯Ψm)^α·r(Ψm⋯Ψ1)^β", [(fwd, a), (bwd, b)], END),
        ev.link("r(S(Ψ1)+⋯+S(Ψm))", [(sym_sum, 1.0)], LEQ),
        ev.link("r(S(Ψ1+⋯+Ψm))", [(sym(total), 1.0)], LEQ),
        ev.link(f"r(S((Ψ1+⋯+Ψm)^{n}))^(1/{n})",
                [(sym(set_power(total, n, cap=cap)), 1.0 / n)], LEQ),
        ev.link("r(Ψ1+⋯+Ψm)^(α+β)", [(total, a + b)], END),
    )
    verdict, margins = assess(links)
    return ChainReport(theorem_id, links, verdict, margins,
                       context=ev.context(alpha=a, beta=b, m=m, n=n))


def chain_sym_mono(psi: MatrixSet, alpha: float, n_max: int,
                   depth: int = DEFAULT_CHAIN_DEPTH, norm: str = ROW_SUM, *,
                   tol: float = DEFAULT_TOL,
                   budget: int = DEFAULT_WORD_BUDGET,
                   cap: int = MEMBER_CAP,
                   ab: tuple[float, float] | None = None) -> ChainReport:
    """Monotone symmetrization sequence chain
    ``r_0 <= r_1 <= ... <= r_n <= r(Ψ)^(α+β)``."""
    ev = _Evaluator(depth, norm, tol, budget, cap)
    if ab is None:
        seq = symmetrization_sequence(psi, alpha, n_max, depth, norm,
                                      cap=cap, word_budget=budget)
        a, b = alpha, 1.0 - alpha
        theorem_id = "sym-mono"
    else:
        a, b = ab
        seq = symmetrization_sequence_ab(psi, a, b, n_max, depth, norm,
                                         cap=cap, word_budget=budget)
        theorem_id = "sym-mat"
    links = tuple(
        ChainLink(f"r_{n} = r(S(Ψ^{2 ** n}))^(1/{2 ** n})", bracket, LEQ)
        for n, bracket in seq.levels
    ) + (ev.link(f"r(Ψ)^{a + b:g}", [(psi, a + b)], END),)
    verdict, margins = assess(links)
    return ChainReport(theorem_id, links, verdict, margins,
                       context=ev.context(alpha=a, beta=b, n_max=n_max))


def run_theorem(theorem_id: str, sets, *, depth: int = DEFAULT_CHAIN_DEPTH,
                norm: str = ROW_SUM, alpha: float = 1.0,
                alpha2: float = 1.0, beta: float = 0.5, n: int = 2,
                levels: int = 3, weights=None, tol: float = DEFAULT_TOL,
                budget: int = DEFAULT_WORD_BUDGET,
                cap: int = MEMBER_CAP) -> ChainReport:
    """Run a chain by id on the sets of an instance, adapting the instance
    shape to the chain's arity (reusing the last set when a chain needs
    more sets than the instance provides)."""
    if theorem_id not in THEOREM_IDS:
        raise KeyError(f"unknown theorem id: {theorem_id!r}")
    sets = list(sets)
    if not sets:
        raise ValueError("instance has no sets")
    two = sets if len(sets) >= 2 else [sets[0], sets[0]]
    kw = dict(depth=depth, norm=norm, tol=tol, budget=budget, cap=cap)

    def wvec(m, regime=CONVEX):
        if weights is not None:
            return WeightVector(tuple(weights), regime)
        return uniform_weights(m) if regime == CONVEX else \
            WeightVector((1.0,) * m, SUPER)

    if theorem_id == "zhan-chain":
        mats = [m for s in sets for m in s]
        if len(mats) < 2:
            mats = mats * 2
        pair = chain_zhan(mats[0], mats[1], beta, tol=tol)
        trio = chain_huang(mats[:3] if len(mats) >= 3 else mats[:2],
                           tol=tol)
        links = pair.links + trio.links
        verdict, margins = assess(links)
        return ChainReport("zhan-chain", links, verdict, margins,
                           context={"beta": beta, "tol": tol})
    if theorem_id == "powers":
        return chain_powers(sets, wvec(len(sets)), n, **kw)
    if theorem_id == "refin":
        return chain_refin(two[0], two[1], beta, **kw)
    if theorem_id == "folge":
        return chain_folge(sets[0], max(alpha, 1.0), n, **kw)
    if theorem_id == "kathyprop-eq":
        return chain_kathyprop_eq(two[0], two[1], wvec(2), beta, **kw)
    if theorem_id == "kathyprop-mat":
        return chain_kathyprop_mat(sets[0], 2, max(alpha, 1.0), n, **kw)
    if theorem_id == "finally":
        grid = [sets, sets[::-1]] if len(sets) >= 2 else [sets, sets]
        return chain_finally(grid, wvec(len(sets)), n, **kw)
    if theorem_id == "finally2":
        grid = [sets, sets[::-1]] if len(sets) >= 2 else [sets, sets]
        return chain_finally2(grid, wvec(len(sets)), n, **kw)
    if theorem_id == "kathyth1":
        return chain_kathyth1(sets, n, **kw)
    if theorem_id == "equalities-joint":
        return chain_equalities_joint(sets, wvec(len(sets)), beta, **kw)
    if theorem_id == "kathyth2":
        return chain_kathyth2(sets, max(alpha, 1.0 / len(sets)), n, **kw)
    if theorem_id == "sym-mono":
        return chain_sym_mono(sets[0], min(max(alpha, 0.0), 1.0), levels,
                              **kw)
    if theorem_id == "sym-mat":
        return chain_sym_mono(sets[0], alpha, levels,
                              ab=(alpha, alpha2), **kw)
    if theorem_id == "geom-sym":
        return chain_geom_sym(sets, min(max(alpha, 0.0), 1.0), n, **kw)
    # geom-sym-mat
    return chain_geom_sym(sets, alpha, n, ab=(alpha, alpha2), **kw)


def scalar_mitr_check(vectors, exponents, *, tol: float = 1e-12) -> bool:
    """Componentwise check of the sum-of-weighted-geometric-means
    inequality for a k x m grid of nonnegative vectors with exponent sum
    >= 1."""
    e = np.asarray(exponents, dtype=float)
    if np.any(e < 0):
        raise ValueError("exponents must be nonnegative")
    if e.sum() < 1.0 - 1e-12:
        raise ValueError("exponent sum must be >= 1")
    grid = np.asarray(vectors, dtype=float)
    if grid.ndim != 3:
        raise DimensionMismatch(
            "expected a k x m grid of equal-length vectors")
    if np.any(grid < 0) or not np.all(np.isfinite(grid)):
        raise ValueError("vectors must be finite and nonnegative")
    k, m, _ = grid.shape
    if m != e.size:
        raise DimensionMismatch(f"{m} columns but {e.size} exponents")
    lhs = (grid ** e[None, :, None]).prod(axis=1).sum(axis=0)
    rhs = (grid.sum(axis=0) ** e[:, None]).prod(axis=0)
    return bool(np.all(lhs <= rhs + tol * np.maximum(1.0, rhs)))
