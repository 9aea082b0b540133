"""Closed-form entropy values and bounds for standard autoequivalences.

Shifts and fractional Calabi-Yau Serre functors have linear entropy
functions and zero polynomial entropy.  Twists around sphere-like and
projective-space-like objects admit closed-form upper bounds for the
weighted dimension sums of their iterates; every closed form is validated
against the exact term-by-term recurrence it came from.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional

import mpmath

from .errors import DomainError


class TwistKind(Enum):
    SPHERICAL = "spherical"
    PTWIST = "ptwist"


#: Floats this close to zero snap to the t = 0 branch (with a warning);
#: the geometric closed forms have a removable singularity there.
T_SNAP = 1e-12


@dataclass(frozen=True)
class TwistParams:
    """Parameters of a twist bound: the object dimension d, the weight t,
    and the two sequence constants A (cost of the twisted building block)
    and B (cost of the start object)."""

    kind: TwistKind
    d: int
    t: float
    A: float
    B: float
    orth_nonempty: bool = False

    def __post_init__(self):
        if self.d < 1:
            raise DomainError("twist dimension d must be >= 1")
        if not self.A > 0 or not self.B > 0:
            raise DomainError("constants A and B must be positive")

    @property
    def t_snapped(self) -> float:
        if self.t != 0.0 and abs(self.t) < T_SNAP:
            warnings.warn(
                "t = %g is within %g of 0; using the t = 0 branch"
                % (self.t, T_SNAP)
            )
            return 0.0
        return self.t


@dataclass(frozen=True)
class ValueOrInterval:
    """Either an exact value (lo == hi) or a closed interval [lo, hi]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo <= self.hi:
            raise DomainError("interval endpoints out of order")

    @staticmethod
    def exact(v: float) -> "ValueOrInterval":
        return ValueOrInterval(v, v)

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def __str__(self) -> str:
        if self.is_exact:
            return "%g" % self.lo
        hi = "inf" if math.isinf(self.hi) else "%g" % self.hi
        return "[%g, %s]" % (self.lo, hi)


def shift_report(m: int) -> dict:
    """The shift by m: entropy function m*t, zero polynomial entropy."""
    return {"h_t_slope": Fraction(m), "h_pol": 0}


def fractional_cy_report(n: int, m: int) -> dict:
    """Serre functor with n-th power the shift by m: entropy function
    (m/n)*t, zero polynomial entropy."""
    if n < 1:
        raise DomainError("fractional period n must be >= 1")
    return {"h_t_slope": Fraction(m, n), "h_pol": 0}


#: Working precision for bound/recurrence evaluation; mpmath exponents are
#: unbounded, so values far beyond float range stay finite internally.
_WORK_BITS = 80


def spherical_bound_mp(p: TwistParams, n: int) -> mpmath.mpf:
    """Closed-form upper bound for the weighted dimension sum after n
    twists around a d-sphere-like object, as an mpmath value.

    Branches (in selection order): d = 1 and t = 0 equal the recurrence
    exactly; for d >= 2 and t != 0 the geometric closed form dominates
    the finite sum.
    """
    if p.kind is not TwistKind.SPHERICAL:
        raise DomainError("spherical_bound needs spherical parameters")
    if n < 1:
        raise DomainError("n must be >= 1")
    t, d = p.t_snapped, p.d
    with mpmath.workprec(_WORK_BITS):
        a, b, tm = mpmath.mpf(p.A), mpmath.mpf(p.B), mpmath.mpf(t)
        if d == 1:
            return n * mpmath.exp(tm) * a + b
        if t == 0.0:
            return n * a + b
        if t < 0:
            return (
                mpmath.exp((1 - d) * n * tm) / (mpmath.exp((1 - d) * tm) - 1) * a
                + b
            )
        return mpmath.exp(tm) / (1 - mpmath.exp((1 - d) * tm)) * a + b


def spherical_recurrence_series(p: TwistParams, n_max: int) -> list:
    """Partial sums B + A * sum_{i=1..n} exp(((1-d)i + d) t) for
    n = 1..n_max, accumulated term by term (mpmath values)."""
    if p.kind is not TwistKind.SPHERICAL:
        raise DomainError("spherical_recurrence needs spherical parameters")
    if n_max < 1:
        raise DomainError("n must be >= 1")
    t, d = p.t_snapped, p.d
    out = []
    with mpmath.workprec(_WORK_BITS):
        a, tm = mpmath.mpf(p.A), mpmath.mpf(t)
        acc = mpmath.mpf(p.B)
        for i in range(1, n_max + 1):
            acc = acc + a * mpmath.exp(((1 - d) * i + d) * tm)
            out.append(acc)
    return out


def spherical_bound(p: TwistParams, n: int) -> float:
    """Float view of spherical_bound_mp (inf when beyond float range)."""
    return float(spherical_bound_mp(p, n))


def spherical_recurrence(p: TwistParams, n: int) -> float:
    """Float view of the exact term-by-term partial sum."""
    return float(spherical_recurrence_series(p, n)[-1])


def ptwist_bound_mp(p: TwistParams, n: int) -> mpmath.mpf:
    """Closed-form upper bound after n twists around a P^d-like object,
    as an mpmath value; t = 0 equals the recurrence, other branches
    dominate it."""
    if p.kind is not TwistKind.PTWIST:
        raise DomainError("ptwist_bound needs P-twist parameters")
    if n < 1:
        raise DomainError("n must be >= 1")
    t, d = p.t_snapped, p.d
    with mpmath.workprec(_WORK_BITS):
        a, b, tm = mpmath.mpf(p.A), mpmath.mpf(p.B), mpmath.mpf(t)
        if t == 0.0:
            return n * a + b
        if t < 0:
            return (
                mpmath.exp(-2 * d * n * tm) / (mpmath.exp(-2 * d * tm) - 1) * a
                + b
            )
        return mpmath.exp(tm) / (1 - mpmath.exp(-2 * d * tm)) * a + b


def ptwist_recurrence_series(p: TwistParams, n_max: int) -> list:
    """Partial sums B + A * sum_{i=0..n-1} exp((1 - 2di) t) for
    n = 1..n_max (mpmath values)."""
    if p.kind is not TwistKind.PTWIST:
        raise DomainError("ptwist_recurrence needs P-twist parameters")
    if n_max < 1:
        raise DomainError("n must be >= 1")
    t, d = p.t_snapped, p.d
    out = []
    with mpmath.workprec(_WORK_BITS):
        a, tm = mpmath.mpf(p.A), mpmath.mpf(t)
        acc = mpmath.mpf(p.B)
        for i in range(n_max):
            acc = acc + a * mpmath.exp((1 - 2 * d * i) * tm)
            out.append(acc)
    return out


def ptwist_bound(p: TwistParams, n: int) -> float:
    """Float view of ptwist_bound_mp (inf when beyond float range)."""
    return float(ptwist_bound_mp(p, n))


def ptwist_recurrence(p: TwistParams, n: int) -> float:
    """Float view of the exact term-by-term partial sum."""
    return float(ptwist_recurrence_series(p, n)[-1])


@dataclass(frozen=True)
class TwistEntropyReport:
    """Entropy function shape and polynomial-entropy branch values of a
    twist, with the branch at the report's own t resolved."""

    kind: TwistKind
    h_t_description: str
    h_t_at_t: float
    h_pol_branches: tuple[tuple[str, ValueOrInterval], ...]
    h_pol_at_t: ValueOrInterval
    unknown_at_t: bool
    note: Optional[str] = None


def twist_entropy_report(
    p: TwistParams, quiver_cy3_context: bool = False
) -> TwistEntropyReport:
    """Branch table for the (polynomial) entropy of a twist.

    Sphere-like twists: the entropy function is (1-d)t for t <= 0 and 0
    for t > 0.  The polynomial entropy vanishes off t = 0 for d >= 2,
    provided for t > 0 that something is orthogonal to the twisted object;
    without that hypothesis the branch is unknown ([0, inf)).  At t = 0
    (and for d = 1 at every t) only the two-sided bound [0, 1] holds in
    general; declaring the quiver 3-Calabi-Yau context pins the value of
    the known examples to 1, recorded as a note.
    """
    t = p.t_snapped
    d = p.d
    if p.kind is TwistKind.SPHERICAL:
        h_t_desc = "(1-d)t = %d*t for t <= 0; 0 for t > 0" % (1 - d)
        h_t_now = (1 - d) * t if t <= 0 else 0.0
        if d == 1:
            branches = {
                "t<0": ValueOrInterval(0.0, 1.0),
                "t=0": ValueOrInterval(0.0, 1.0),
                "t>0": ValueOrInterval(0.0, 1.0),
            }
            unknown = {"t<0": False, "t=0": False, "t>0": False}
        else:
            pos = (
                ValueOrInterval.exact(0.0)
                if p.orth_nonempty
                else ValueOrInterval(0.0, math.inf)
            )
            branches = {
                "t<0": ValueOrInterval.exact(0.0),
                "t=0": ValueOrInterval(0.0, 1.0),
                "t>0": pos,
            }
            unknown = {
                "t<0": False,
                "t=0": False,
                "t>0": not p.orth_nonempty,
            }
    else:
        h_t_desc = "-2dt = %d*t for t <= 0; 0 for t > 0" % (-2 * d)
        h_t_now = -2 * d * t if t <= 0 else 0.0
        pos = (
            ValueOrInterval.exact(0.0)
            if p.orth_nonempty
            else ValueOrInterval(0.0, math.inf)
        )
        branches = {
            "t<0": ValueOrInterval.exact(0.0),
            "t=0": ValueOrInterval(0.0, 1.0),
            "t>0": pos,
        }
        unknown = {"t<0": False, "t=0": False, "t>0": not p.orth_nonempty}

    key = "t=0" if t == 0.0 else ("t<0" if t < 0 else "t>0")
    note = None
    if quiver_cy3_context and key == "t=0":
        note = (
            "in the quiver 3-Calabi-Yau context the vertex twists attain "
            "the upper endpoint: the value is 1"
        )
    return TwistEntropyReport(
        kind=p.kind,
        h_t_description=h_t_desc,
        h_t_at_t=h_t_now,
        h_pol_branches=tuple(sorted(branches.items())),
        h_pol_at_t=branches[key],
        unknown_at_t=unknown[key],
        note=note,
    )
