"""Brute-force growth fitting for positive sequences.

The oracle side of the library: given samples a_n, fit the model
``log a_n ~ n*log(rho) + s*log(n) + c`` by least squares and report
(rho_hat, s_hat) with residuals.  Also evaluates weighted graded-dimension
sums (the computable complexity measure between two objects) and turns
families of graded-dimension tables into entropy estimates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .errors import DimensionMismatch, NonPositiveValue, WindowTooShort, ZeroPairingAt
from .exact_linalg import ExactMatrix

#: Evaluation points for entropy-from-tables reports, symmetric around the
#: distinguished value t = 0.
DEFAULT_T_GRID = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass(frozen=True)
class PositiveSequence:
    """Strictly positive samples a_n for n = n_start, n_start + 1, ..."""

    values: tuple[float, ...]
    n_start: int = 1

    def __post_init__(self):
        if self.n_start < 1:
            raise NonPositiveValue("n_start must be >= 1")
        if len(self.values) < 8:
            raise WindowTooShort(
                "need at least 8 samples for a 3-parameter fit, got %d"
                % len(self.values)
            )
        for v in self.values:
            if not (v > 0) or not math.isfinite(v):
                raise NonPositiveValue(
                    "sequence values must be strictly positive and finite"
                )

    @staticmethod
    def from_values(values: Sequence[float], n_start: int = 1) -> "PositiveSequence":
        return PositiveSequence(tuple(float(v) for v in values), n_start)

    @property
    def n_end(self) -> int:
        return self.n_start + len(self.values) - 1

    def value_at(self, n: int) -> float:
        return self.values[n - self.n_start]


@dataclass(frozen=True)
class ExtTable:
    """Finitely supported map k -> dim Hom(M, N[k]); the empty table stands
    for the zero object."""

    dims: tuple[tuple[int, int], ...]

    @staticmethod
    def from_dict(dims: Mapping[int, int]) -> "ExtTable":
        items = []
        for k, v in sorted(dims.items()):
            k, v = int(k), int(v)
            if v < 0:
                raise NonPositiveValue("graded dimensions must be >= 0")
            if v:
                items.append((k, v))
        return ExtTable(tuple(items))

    def as_dict(self) -> dict[int, int]:
        return dict(self.dims)


@dataclass(frozen=True)
class EstimatedSignature:
    """Fit result: a_n ~ rho_hat**n * n**s_hat * exp(c) over the window."""

    rho_hat: float
    s_hat: float
    residual: float
    window: tuple[int, int]


def eval_ext_distance(table: ExtTable, t: float) -> float:
    """The weighted dimension sum  sum_k dims[k] * exp(-k*t); 0 for the
    empty table."""
    return float(sum(v * math.exp(-k * t) for k, v in table.dims))


def fit_growth(
    seq: PositiveSequence,
    n_lo: Optional[int] = None,
    n_hi: Optional[int] = None,
    drop_head_fraction: float = 0.25,
) -> EstimatedSignature:
    """Least-squares fit of log a_n over [n_lo, n_hi].

    When no explicit window is given, the head of the sequence is dropped
    per ``drop_head_fraction`` to suppress transient terms.
    """
    if n_lo is None:
        n_lo = seq.n_start + int(len(seq.values) * drop_head_fraction)
    if n_hi is None:
        n_hi = seq.n_end
    if n_lo < seq.n_start or n_hi > seq.n_end:
        raise WindowTooShort(
            "window [%d, %d] exceeds the sequence range [%d, %d]"
            % (n_lo, n_hi, seq.n_start, seq.n_end)
        )
    ns = np.arange(n_lo, n_hi + 1, dtype=float)
    if len(ns) < 8:
        raise WindowTooShort(
            "fit window has %d points; need at least 8" % len(ns)
        )
    ys = np.array(
        [math.log(seq.value_at(n)) for n in range(n_lo, n_hi + 1)], dtype=float
    )
    design = np.column_stack([ns, np.log(ns), np.ones_like(ns)])
    coef, _, _, _ = np.linalg.lstsq(design, ys, rcond=None)
    fitted = design @ coef
    residual = float(np.sqrt(np.mean((ys - fitted) ** 2)))
    return EstimatedSignature(
        rho_hat=float(math.exp(coef[0])),
        s_hat=float(coef[1]),
        residual=residual,
        window=(int(n_lo), int(n_hi)),
    )


#: Residual level above which a single-regression estimate cannot be
#: trusted to stand in for the limit (upper and lower growth may differ).
RESIDUAL_TRUST_THRESHOLD = 0.1


def entropy_from_ext_sequence(
    tables: Sequence[ExtTable],
    t_grid: Sequence[float] = DEFAULT_T_GRID,
    n_start: int = 1,
    drop_head_fraction: float = 0.25,
) -> dict[float, dict[str, float]]:
    """Entropy and polynomial-entropy estimates from a family of
    graded-dimension tables indexed by iteration count.

    For each t, fits n -> eval_ext_distance(tables[n], t); reports
    h_t_hat = log(rho_hat) and h_pol_t_hat = s_hat with the fit residual.
    A ``limit_warning`` flag is set when the residual exceeds the trust
    threshold (the single regression then cannot distinguish upper from
    lower growth).
    """
    if len(tables) < 8:
        raise WindowTooShort("need at least 8 tables, got %d" % len(tables))
    out: dict[float, dict[str, float]] = {}
    for t in t_grid:
        values = [eval_ext_distance(tab, t) for tab in tables]
        for v in values:
            if not v > 0:
                raise NonPositiveValue(
                    "a table evaluates to a non-positive value at t = %g" % t
                )
        est = fit_growth(
            PositiveSequence.from_values(values, n_start),
            drop_head_fraction=drop_head_fraction,
        )
        entry = {
            "h_t_hat": math.log(est.rho_hat),
            "h_pol_t_hat": est.s_hat,
            "residual": est.residual,
        }
        if est.residual > RESIDUAL_TRUST_THRESHOLD:
            entry["limit_warning"] = 1.0
        out[float(t)] = entry
    return out


def pairing_values(
    gram: ExactMatrix,
    f: ExactMatrix,
    v: Sequence[Union[int, Fraction]],
    w: Sequence[Union[int, Fraction]],
    n_max: int,
) -> list[Fraction]:
    """Exact values |v^T . gram . F^n . w| for n = 1..n_max (zeros kept)."""
    if gram.n != f.n:
        raise DimensionMismatch("gram and F sizes differ")
    left = gram.transpose().matvec(v)  # row vector v^T G as a column of G^T
    out = []
    cur = list(w)
    for _ in range(n_max):
        cur = list(f.matvec(cur))
        out.append(abs(sum(a * b for a, b in zip(left, cur))))
    return out


def pairing_sequence(
    gram: ExactMatrix,
    f: ExactMatrix,
    v: Sequence[Union[int, Fraction]],
    w: Sequence[Union[int, Fraction]],
    n_max: int,
) -> PositiveSequence:
    """The sequence a_n = |v^T . gram . F^n . w| for n = 1..n_max, exact
    until the float conversion at the boundary.

    Raises ZeroPairingAt listing every n with a zero value: the pairing
    sequence is then degenerate for this vector pair and another pair must
    be chosen.
    """
    values = pairing_values(gram, f, v, w, n_max)
    zeros = [n for n, val in enumerate(values, start=1) if val == 0]
    if zeros:
        raise ZeroPairingAt(zeros)
    return PositiveSequence.from_values([float(x) for x in values], n_start=1)
