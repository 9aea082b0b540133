"""Exact linear algebra over the rationals.

Certified spectral radius and polynomial growth rate of integer/rational
square matrices.  The growth data of ``M**n`` (asymptotically
``rho**n * n**s``) is computed without an explicit Jordan basis: the
multiplicity of a squarefree part of the minimal polynomial equals the
largest Jordan block size among that part's roots, so ``rho`` and ``s``
can be read off from the squarefree structure plus certified root-modulus
comparisons.

All values are exact ``fractions.Fraction`` scalars; floating point only
appears in reported approximations, never in the decision path.
"""

from __future__ import annotations

import cmath
import itertools
import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import mpmath

from .errors import (
    DimensionMismatch,
    DomainError,
    NilpotentInput,
    NonIntegerEntries,
    PrecisionExhausted,
    TiedModuli,
)

Rat = Union[int, Fraction, str]

#: Escalation schedule for root-modulus separation: interval arithmetic at
#: ``START_BITS`` working precision, doubling up to ``MAX_BITS``.
START_BITS = 64
MAX_BITS = 1024

#: Default width cap for the reported spectral-radius interval.
DEFAULT_TOLERANCE = Fraction(1, 10**12)


def _to_fraction(x: Rat) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(
        "exact entries must be int, Fraction, or string; got %r" % type(x).__name__
    )


# ---------------------------------------------------------------------------
# Polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactPoly:
    """Dense univariate polynomial with Fraction coefficients.

    ``coefficients`` are stored lowest degree first with no trailing zeros;
    the zero polynomial is the empty tuple.
    """

    coefficients: tuple[Fraction, ...]

    @staticmethod
    def from_coefficients(coeffs: Sequence[Rat]) -> "ExactPoly":
        cs = [_to_fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        return ExactPoly(tuple(cs))

    @staticmethod
    def zero() -> "ExactPoly":
        return ExactPoly(())

    @staticmethod
    def one() -> "ExactPoly":
        return ExactPoly((Fraction(1),))

    @staticmethod
    def x() -> "ExactPoly":
        return ExactPoly((Fraction(0), Fraction(1)))

    @property
    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree, with the convention that the zero polynomial has degree -1."""
        return len(self.coefficients) - 1

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coefficients[-1]

    def __getitem__(self, k: int) -> Fraction:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return Fraction(0)

    def __add__(self, other: "ExactPoly") -> "ExactPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return ExactPoly.from_coefficients(
            [self[k] + other[k] for k in range(n)]
        )

    def __sub__(self, other: "ExactPoly") -> "ExactPoly":
        n = max(len(self.coefficients), len(other.coefficients))
        return ExactPoly.from_coefficients(
            [self[k] - other[k] for k in range(n)]
        )

    def __neg__(self) -> "ExactPoly":
        return ExactPoly(tuple(-c for c in self.coefficients))

    def __mul__(self, other: "ExactPoly") -> "ExactPoly":
        if self.is_zero or other.is_zero:
            return ExactPoly.zero()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a == 0:
                continue
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return ExactPoly.from_coefficients(out)

    def scale(self, c: Rat) -> "ExactPoly":
        c = _to_fraction(c)
        if c == 0:
            return ExactPoly.zero()
        return ExactPoly(tuple(a * c for a in self.coefficients))

    def __divmod__(self, other: "ExactPoly") -> tuple["ExactPoly", "ExactPoly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = len(rem) - len(other.coefficients)
        if dq < 0:
            return ExactPoly.zero(), self
        quot = [Fraction(0)] * (dq + 1)
        lead = other.leading
        for k in range(dq, -1, -1):
            c = rem[k + other.degree] / lead
            quot[k] = c
            if c != 0:
                for j, b in enumerate(other.coefficients):
                    rem[k + j] -= c * b
        return (
            ExactPoly.from_coefficients(quot),
            ExactPoly.from_coefficients(rem),
        )

    def exact_div(self, other: "ExactPoly") -> "ExactPoly":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ArithmeticError("polynomial division was not exact")
        return q

    def monic(self) -> "ExactPoly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def derivative(self) -> "ExactPoly":
        return ExactPoly.from_coefficients(
            [k * c for k, c in enumerate(self.coefficients)][1:]
        )

    def reflect(self) -> "ExactPoly":
        """The polynomial p(-x)."""
        return ExactPoly(
            tuple(c if k % 2 == 0 else -c for k, c in enumerate(self.coefficients))
        )

    def __pow__(self, n: int) -> "ExactPoly":
        if n < 0:
            raise ValueError("negative polynomial power")
        out = ExactPoly.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __call__(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self[k]
            if c == 0:
                continue
            if k == 0:
                body = str(abs(c))
            else:
                xs = "x" if k == 1 else "x^%d" % k
                body = xs if abs(c) == 1 else "%s*%s" % (abs(c), xs)
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += " %s %s" % (sign, body)
        return out


def poly_gcd(a: ExactPoly, b: ExactPoly) -> ExactPoly:
    """Monic greatest common divisor over the rationals."""
    while not b.is_zero:
        a, b = b, divmod(a, b)[1]
    if a.is_zero:
        return a
    return a.monic()


def squarefree_decomposition(p: ExactPoly) -> list[tuple[ExactPoly, int]]:
    """Yun decomposition ``p = c * prod h_j ** j`` into monic, pairwise
    coprime squarefree parts, returned as ``(h_j, j)`` sorted by
    multiplicity and skipping trivial parts."""
    if p.is_zero:
        raise DomainError("squarefree decomposition of the zero polynomial")
    p = p.monic()
    if p.degree == 0:
        return []
    g = poly_gcd(p, p.derivative())
    out = []
    if g.degree == 0:
        return [(p, 1)]
    c = p.exact_div(g)
    d = p.derivative().exact_div(g) - c.derivative()
    j = 1
    while c.degree > 0:
        h = poly_gcd(c, d)
        if h.degree > 0:
            out.append((h, j))
        c = c.exact_div(h) if h.degree > 0 else c
        d = (d.exact_div(h) if h.degree > 0 else d) - c.derivative()
        j += 1
    return out


_CYCLOTOMIC_CACHE: dict[int, ExactPoly] = {}


def cyclotomic_poly(d: int) -> ExactPoly:
    """The d-th cyclotomic polynomial, computed by exact division of x^d - 1."""
    if d < 1:
        raise ValueError("cyclotomic index must be positive")
    if d in _CYCLOTOMIC_CACHE:
        return _CYCLOTOMIC_CACHE[d]
    num = ExactPoly.from_coefficients([-1] + [0] * (d - 1) + [1])
    for e in range(1, d):
        if d % e == 0:
            num = num.exact_div(cyclotomic_poly(e))
    _CYCLOTOMIC_CACHE[d] = num
    return num


def euler_phi(k: int) -> int:
    out = k
    m = k
    p = 2
    while p * p <= m:
        if m % p == 0:
            out -= out // p
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out -= out // m
    return out


# ---------------------------------------------------------------------------
# Matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExactMatrix:
    """Immutable square matrix of Fractions with an integer fast-path flag."""

    rows: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n < 1:
            raise DimensionMismatch("matrix must have dimension >= 1")
        for row in self.rows:
            if len(row) != n:
                raise DimensionMismatch("matrix must be square; got ragged rows")

    @staticmethod
    def from_rows(rows: Sequence[Sequence[Rat]]) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(_to_fraction(x) for x in r) for r in rows))

    @staticmethod
    def identity(n: int) -> "ExactMatrix":
        one, zero = Fraction(1), Fraction(0)
        return ExactMatrix(
            tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))
        )

    @staticmethod
    def zeros(n: int) -> "ExactMatrix":
        zero = Fraction(0)
        return ExactMatrix(tuple(tuple(zero for _ in range(n)) for _ in range(n)))

    @staticmethod
    def companion(p: ExactPoly) -> "ExactMatrix":
        """Companion matrix of a monic polynomial of degree >= 1."""
        if p.degree < 1:
            raise ValueError("companion matrix needs degree >= 1")
        p = p.monic()
        n = p.degree
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = Fraction(1)
        for i in range(n):
            rows[i][n - 1] = -p[i]
        return ExactMatrix.from_rows(rows)

    @staticmethod
    def block_diag(*blocks: "ExactMatrix") -> "ExactMatrix":
        n = sum(b.n for b in blocks)
        rows = [[Fraction(0)] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i in range(b.n):
                for j in range(b.n):
                    rows[off + i][off + j] = b.rows[i][j]
            off += b.n
        return ExactMatrix.from_rows(rows)

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def is_integer(self) -> bool:
        return all(x.denominator == 1 for row in self.rows for x in row)

    def entry(self, i: int, j: int) -> Fraction:
        return self.rows[i][j]

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_size(other)
        return ExactMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_size(other)
        return ExactMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.rows, other.rows)
            )
        )

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix(tuple(tuple(-a for a in row) for row in self.rows))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._same_size(other)
        cols = tuple(zip(*other.rows))
        return ExactMatrix(
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in cols)
                for row in self.rows
            )
        )

    __mul__ = __matmul__

    def scale(self, c: Rat) -> "ExactMatrix":
        c = _to_fraction(c)
        return ExactMatrix(tuple(tuple(a * c for a in row) for row in self.rows))

    def __pow__(self, m: int) -> "ExactMatrix":
        base = self if m >= 0 else self.inverse()
        m = abs(m)
        out = ExactMatrix.identity(self.n)
        while m:
            if m & 1:
                out = out @ base
            base = base @ base
            m >>= 1
        return out

    def matvec(self, v: Sequence[Rat]) -> tuple[Fraction, ...]:
        if len(v) != self.n:
            raise DimensionMismatch("vector length does not match matrix size")
        vf = [_to_fraction(x) for x in v]
        return tuple(sum(a * b for a, b in zip(row, vf)) for row in self.rows)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(tuple(zip(*self.rows)))

    def trace(self) -> Fraction:
        return sum(self.rows[i][i] for i in range(self.n))

    @property
    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def det(self) -> Fraction:
        """Determinant by fraction-free Bareiss elimination."""
        n = self.n
        a = [list(row) for row in self.rows]
        sign = 1
        prev = Fraction(1)
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return Fraction(0)
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev
                a[i][k] = Fraction(0)
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def inverse(self) -> "ExactMatrix":
        n = self.n
        a = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
             for i, row in enumerate(self.rows)]
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                raise DomainError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            d = a[k][k]
            a[k] = [x / d for x in a[k]]
            for i in range(n):
                if i != k and a[i][k] != 0:
                    f = a[i][k]
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return ExactMatrix.from_rows([row[n:] for row in a])

    def entry_abs_sum(self) -> Fraction:
        """Sum of absolute values of all entries (an exact matrix norm)."""
        return sum(abs(x) for row in self.rows for x in row)

    def _same_size(self, other: "ExactMatrix"):
        if self.n != other.n:
            raise DimensionMismatch(
                "matrix sizes differ: %d vs %d" % (self.n, other.n)
            )

    def __str__(self) -> str:
        return "[" + "; ".join(
            " ".join(str(x) for x in row) for row in self.rows
        ) + "]"


def tensor_product(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    """Kronecker product, dimension ``a.n * b.n``, row-major block layout."""
    n, m = a.n, b.n
    rows = []
    for i in range(n):
        for k in range(m):
            rows.append(
                tuple(
                    a.rows[i][j] * b.rows[k][l]
                    for j in range(n)
                    for l in range(m)
                )
            )
    return ExactMatrix(tuple(rows))


def exterior_power(m: ExactMatrix, k: int) -> ExactMatrix:
    """Matrix of the k-th exterior power in the lexicographic basis of
    k-element subsets; entries are k x k minors."""
    n = m.n
    if not 1 <= k <= n:
        raise DomainError("exterior power index must satisfy 1 <= k <= n")
    subsets = list(itertools.combinations(range(n), k))
    rows = []
    for rset in subsets:
        row = []
        for cset in subsets:
            minor = [[m.rows[i][j] for j in cset] for i in rset]
            row.append(ExactMatrix.from_rows(minor).det() if k > 1 else minor[0][0])
        rows.append(tuple(row))
    return ExactMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# Characteristic and minimal polynomials
# ---------------------------------------------------------------------------


def char_poly(m: ExactMatrix) -> ExactPoly:
    """The monic characteristic polynomial det(xI - M), exactly.

    Integer matrices go through fraction-free Bareiss elimination over the
    polynomial ring; rational matrices use the Faddeev-LeVerrier trace
    recursion, which avoids intermediate-denominator blowup.
    """
    if m.is_integer:
        return _char_poly_bareiss(m)
    return _char_poly_faddeev(m)


def _char_poly_bareiss(m: ExactMatrix) -> ExactPoly:
    n = m.n
    x = ExactPoly.x()
    a = [
        [
            x - ExactPoly.from_coefficients([m.rows[i][j]])
            if i == j
            else ExactPoly.from_coefficients([-m.rows[i][j]])
            for j in range(n)
        ]
        for i in range(n)
    ]
    # Leading principal minors of xI - M are monic, so no pivoting is needed
    # and every Bareiss division is exact.
    prev = ExactPoly.one()
    for k in range(n - 1):
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]).exact_div(prev)
            a[i][k] = ExactPoly.zero()
        prev = a[k][k]
    return a[n - 1][n - 1]


def _char_poly_faddeev(m: ExactMatrix) -> ExactPoly:
    n = m.n
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    mk = ExactMatrix.identity(n)
    c = Fraction(1)
    for k in range(1, n + 1):
        if k > 1:
            mk = m @ (mk + ExactMatrix.identity(n).scale(c))
        else:
            mk = m
        c = -mk.trace() / k
        coeffs[n - k] = c
    return ExactPoly.from_coefficients(coeffs)


def min_poly(m: ExactMatrix) -> ExactPoly:
    """Monic least-degree polynomial annihilating M, found by exact linear
    dependency search over the flattened powers I, M, M^2, ..."""
    n = m.n
    basis: list[tuple[list[Fraction], list[Fraction], int]] = []
    power = ExactMatrix.identity(n)
    k = 0
    while True:
        vec = [x for row in power.rows for x in row]
        rep = [Fraction(0)] * (k + 1)
        rep[k] = Fraction(1)
        for bvec, brep, piv in basis:
            if vec[piv] != 0:
                f = vec[piv] / bvec[piv]
                vec = [a - f * b for a, b in zip(vec, bvec)]
                for idx, b in enumerate(brep):
                    rep[idx] -= f * b
        piv = next((i for i, a in enumerate(vec) if a != 0), None)
        if piv is None:
            return ExactPoly.from_coefficients(rep)
        basis.append((vec, rep, piv))
        power = power @ m
        k += 1


def nilpotency_index(m: ExactMatrix) -> Optional[int]:
    """Smallest j with M^j = 0, or None if M is not nilpotent."""
    if m.is_zero:
        return 1
    power = m
    for j in range(1, m.n + 1):
        if power.is_zero:
            return j
        power = power @ m
    return None


def quasi_unipotent_order(m: ExactMatrix) -> Optional[int]:
    """Smallest k with (M^k - I) nilpotent, or None.

    Candidate eigenvalue orders d are exactly those with phi(d) <= n (so
    d <= 2 n^2); the returned k is their least common multiple, which can
    exceed that per-order bound when several orders combine.
    """
    if not m.is_integer:
        raise NonIntegerEntries("quasi-unipotence search needs integer entries")
    n = m.n
    radical = ExactPoly.one()
    for h, _ in squarefree_decomposition(min_poly(m)):
        radical = radical * h
    rest = radical
    k = 1
    for d in range(1, 2 * n * n + 1):
        if rest.degree == 0:
            break
        if euler_phi(d) > n:
            continue
        phi_d = cyclotomic_poly(d)
        if phi_d.degree > rest.degree:
            continue
        q, r = divmod(rest, phi_d)
        if r.is_zero:
            rest = q
            k = k * d // math.gcd(k, d)
    if rest.degree != 0:
        return None
    if nilpotency_index(m**k - ExactMatrix.identity(n)) is None:
        raise AssertionError("cyclotomic factor search produced a wrong order")
    return k


# ---------------------------------------------------------------------------
# Certified root moduli
# ---------------------------------------------------------------------------


def _mpf_to_fraction(x) -> Fraction:
    """Exact conversion of an mpmath float (a dyadic rational).

    The mantissa is forced to a Python int: under the gmpy2 backend it is
    an mpz, whose division operator would otherwise leak mpfr values into
    the exact layer.
    """
    sign, man, exp, _ = x._mpf_
    man = int(man)
    exp = int(exp)
    if man == 0:
        return Fraction(0)
    value = Fraction(man) * (Fraction(2) ** exp)
    return -value if sign else value


class _NeedMoreBits(Exception):
    pass


@dataclass
class _RootBox:
    z: complex                    # float approximation of the root
    part: int                     # index of the owning squarefree part
    mod_lo: Fraction
    mod_hi: Fraction
    exact_sq: Optional[Fraction]  # modulus squared, when exactly known


def _eval_mp(h: ExactPoly, z):
    acc = mpmath.mpc(0)
    for c in reversed(h.coefficients):
        acc = acc * z + mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
    return acc


def _isolate_numeric(h: ExactPoly, bits: int) -> list[tuple]:
    """Approximate all roots of a squarefree h with certified, pairwise
    disjoint position disks.  Returns (z, radius) pairs in mpmath types;
    raises _NeedMoreBits when the disks cannot be certified."""
    n = h.degree
    deriv = h.derivative()
    with mpmath.workprec(bits + 64):
        coeffs = [
            mpmath.mpf(c.numerator) / mpmath.mpf(c.denominator)
            for c in reversed(h.coefficients)
        ]
        try:
            roots = mpmath.polyroots(coeffs, maxsteps=200, extraprec=bits)
        except mpmath.libmp.libhyper.NoConvergence:
            raise _NeedMoreBits()
        scale = max(abs(c) for c in h.coefficients)
        scale_mp = mpmath.mpf(scale.numerator) / mpmath.mpf(scale.denominator)
        boxes = []
        for z in roots:
            z = mpmath.mpc(z)
            absz = abs(z)
            # Majorant for Horner evaluation error at this working precision.
            everr = (
                mpmath.mpf(2 * (n + 1))
                * scale_mp
                * max(mpmath.mpf(1), absz) ** n
                * mpmath.mpf(2) ** (-(bits + 58))
            )
            pz = _eval_mp(h, z)
            dpz = _eval_mp(deriv, z)
            den = abs(dpz) - (n + 1) * everr
            if den <= 0:
                raise _NeedMoreBits()
            # Any point lies within n*|p/p'| of some root of p.
            r = n * (abs(pz) + everr) / den
            r = r * (1 + mpmath.mpf(2) ** -40) + mpmath.mpf(2) ** (-(bits + 8))
            boxes.append((z, r))
        for (z1, r1), (z2, r2) in itertools.combinations(boxes, 2):
            if abs(z1 - z2) <= r1 + r2:
                raise _NeedMoreBits()
        return boxes


def _integer_roots(h: ExactPoly) -> list[Fraction]:
    """Integer roots of h, found by trial on divisors of the constant term
    (complete whenever that term is reasonably factorable)."""
    if h.is_zero or h.degree < 1:
        return []
    den = 1
    for c in h.coefficients:
        den = den * c.denominator // math.gcd(den, c.denominator)
    a0 = int(h.coefficients[0] * den)
    if a0 == 0:
        return [Fraction(0)] if h(Fraction(0)) == 0 else []
    candidates = set()
    m = abs(a0)
    factors = {}
    p = 2
    budget = 10**5
    while p * p <= m and p <= budget:
        while m % p == 0:
            factors[p] = factors.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    if m > 1 and m <= budget * budget:
        factors[m] = factors.get(m, 0) + 1
        m = 1
    if m == 1:
        divisors = [1]
        for prime, e in factors.items():
            divisors = [d * prime**i for d in divisors for i in range(e + 1)]
        if len(divisors) <= 20000:
            for d in divisors:
                candidates.update((d, -d))
    else:
        bound = 1 + max(abs(c) for c in h.coefficients) / abs(h.leading)
        for c in range(1, min(int(bound) + 1, 1001)):
            candidates.update((c, -c))
    return [Fraction(c) for c in sorted(candidates) if h(Fraction(c)) == 0]


def _deflate_root(h: ExactPoly, r: Fraction) -> ExactPoly:
    return h.exact_div(ExactPoly.from_coefficients([-r, 1]))


@dataclass
class _ModClass:
    """A set of roots sharing one modulus (proven exactly, or merged
    pessimistically at the precision cap)."""

    exact_sq: Optional[Fraction]
    lo: Fraction
    hi: Fraction
    parts: set[int]
    positions: list[complex]
    proven: bool
    merged_at_cap: bool = False

    def overlaps(self, other: "_ModClass") -> bool:
        return not (self.hi < other.lo or other.hi < self.lo)


def _sqrt_interval(m2: Fraction, width: Fraction) -> tuple[Fraction, Fraction]:
    """Rational bracket of sqrt(m2) of width at most ``width``; a point
    when m2 is a perfect square."""
    if m2 == 0:
        return Fraction(0), Fraction(0)
    exact = _fraction_sqrt(m2)
    if exact is not None:
        return exact, exact
    scale = 4 * max(1, int(1 / width)) * 2**16
    t = math.isqrt((m2.numerator * scale * scale) // m2.denominator)
    return Fraction(t, scale), Fraction(t + 2, scale)


def _exact_roots_of_part(h: ExactPoly, part: int) -> tuple[list[_RootBox], ExactPoly]:
    """Split off roots whose modulus is exactly computable: rational roots,
    roots of cyclotomic factors (modulus 1), and complex quadratic pairs
    (modulus squared equals the constant term)."""
    boxes = []
    rest = h.monic()
    for r in _integer_roots(rest):
        rest = _deflate_root(rest, r)
        boxes.append(_RootBox(complex(float(r), 0.0), part, abs(r), abs(r), r * r))
    deg0 = rest.degree
    if deg0 >= 1:
        for d in range(1, 2 * deg0 * deg0 + 2):
            if rest.degree == 0:
                break
            if euler_phi(d) > rest.degree:
                continue
            phi_d = cyclotomic_poly(d)
            if phi_d.degree > rest.degree:
                continue
            q, rr = divmod(rest, phi_d)
            if rr.is_zero:
                rest = q
                for j in range(d):
                    if math.gcd(j, d) == 1:
                        z = cmath.exp(2j * cmath.pi * j / d)
                        boxes.append(
                            _RootBox(z, part, Fraction(1), Fraction(1), Fraction(1))
                        )
    if rest.degree == 1:
        r = -rest[0] / rest[1]
        boxes.append(_RootBox(complex(float(r), 0.0), part, abs(r), abs(r), r * r))
        rest = ExactPoly.one()
    elif rest.degree == 2:
        b, c = rest[1], rest[0]
        disc = b * b - 4 * c
        if disc < 0:
            # Conjugate pair: modulus squared is the constant term.
            re = float(-b / 2)
            im = math.sqrt(float(-disc)) / 2
            for sign in (1, -1):
                boxes.append(
                    _RootBox(complex(re, sign * im), part, Fraction(0), Fraction(0), c)
                )
            rest = ExactPoly.one()
        elif b == 0:
            # Real pair +-sqrt(-c): modulus squared is -c.
            r = math.sqrt(float(-c))
            for sign in (1, -1):
                boxes.append(
                    _RootBox(complex(sign * r, 0.0), part, Fraction(0), Fraction(0), -c)
                )
            rest = ExactPoly.one()
    return boxes, rest


def _build_classes(
    exact_boxes: list[_RootBox],
    numeric_parts: list[tuple[int, ExactPoly]],
    neg_pairs_poly: ExactPoly,
    width: Fraction,
    bits: int,
) -> list[_ModClass]:
    """One pass of class construction at a fixed working precision."""
    numeric_boxes: list[_RootBox] = []
    positions = []  # (z, r) in mpmath types, parallel to numeric_boxes
    for idx, h in numeric_parts:
        for z, r in _isolate_numeric(h, bits):
            rf = _mpf_to_fraction(mpmath.mpf(r))
            a = _mpf_to_fraction(mpmath.mpf(abs(z)))
            slack = a / Fraction(2 ** (bits + 40)) + Fraction(1, 2 ** (bits + 8))
            lo = max(Fraction(0), a - slack - rf)
            hi = a + slack + rf
            numeric_boxes.append(
                _RootBox(complex(float(z.real), float(z.imag)), idx, lo, hi, None)
            )
            positions.append((z, r))

    classes: list[_ModClass] = []
    by_sq: dict[Fraction, int] = {}
    for box in exact_boxes:
        if box.exact_sq in by_sq:
            cls = classes[by_sq[box.exact_sq]]
            cls.parts.add(box.part)
            cls.positions.append(box.z)
        else:
            lo, hi = _sqrt_interval(box.exact_sq, width)
            by_sq[box.exact_sq] = len(classes)
            classes.append(
                _ModClass(box.exact_sq, lo, hi, {box.part}, [box.z], True)
            )

    # Union-find over numeric boxes: conjugate partners always share a
    # modulus; so do +/- partners (roots of gcd(R(x), R(-x))).
    parent = list(range(len(numeric_boxes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i, j):
        parent[find(i)] = find(j)

    def locate(z, r) -> Optional[int]:
        """Index of the unique box whose disk meets D(z, r); None when the
        localization is ambiguous or empty at this precision."""
        hits = [
            k
            for k, (zk, rk) in enumerate(positions)
            if abs(zk - z) <= (rk + r) * (1 + mpmath.mpf(2) ** -20)
        ]
        return hits[0] if len(hits) == 1 else None

    with mpmath.workprec(bits + 64):
        for i, (z, r) in enumerate(positions):
            if abs(z.imag) > r:  # certainly not a real root
                j = locate(z.conjugate(), r)
                if j is None:
                    raise _NeedMoreBits()  # conjugate root not localizable
                if j != i:
                    union(i, j)
        if neg_pairs_poly.degree >= 1 and numeric_boxes:
            for z, r in _isolate_numeric(neg_pairs_poly, bits):
                i = locate(z, r)
                j = locate(-z, r)
                if i is None or j is None:
                    raise _NeedMoreBits()
                if i != j:
                    union(i, j)

    groups: dict[int, list[_RootBox]] = {}
    for i, box in enumerate(numeric_boxes):
        groups.setdefault(find(i), []).append(box)
    for boxes in groups.values():
        lo = max(b.mod_lo for b in boxes)
        hi = min(b.mod_hi for b in boxes)
        if hi < lo:
            # Members proven equal must have consistent intervals.
            raise _NeedMoreBits()
        classes.append(
            _ModClass(None, lo, hi, {b.part for b in boxes},
                      [b.z for b in boxes], False)
        )
    return classes


def _separate_proven(classes: list[_ModClass]) -> None:
    """Distinct exact moduli always separate: shrink their brackets."""
    for a, b in itertools.combinations(range(len(classes)), 2):
        ca, cb = classes[a], classes[b]
        if not (ca.proven and cb.proven) or ca.exact_sq == cb.exact_sq:
            continue
        width = min(ca.hi - ca.lo, cb.hi - cb.lo)
        for _ in range(300):
            if not ca.overlaps(cb):
                break
            width = width / 16
            ca.lo, ca.hi = _sqrt_interval(ca.exact_sq, width)
            cb.lo, cb.hi = _sqrt_interval(cb.exact_sq, width)


def _merge_overlapping(classes: list[_ModClass]) -> list[_ModClass]:
    merged = list(classes)
    changed = True
    while changed:
        changed = False
        for a, b in itertools.combinations(range(len(merged)), 2):
            if merged[a].overlaps(merged[b]):
                ca, cb = merged[a], merged[b]
                new = _ModClass(
                    None,
                    min(ca.lo, cb.lo),
                    max(ca.hi, cb.hi),
                    ca.parts | cb.parts,
                    ca.positions + cb.positions,
                    False,
                    merged_at_cap=True,
                )
                merged = [c for k, c in enumerate(merged) if k not in (a, b)]
                merged.append(new)
                changed = True
                break
    return merged


def _modulus_classes(
    parts: Sequence[tuple[ExactPoly, int]],
    width: Fraction,
    start_bits: int = START_BITS,
    max_bits: int = MAX_BITS,
) -> tuple[list[_ModClass], bool]:
    """Group all roots of the given coprime squarefree parts into classes of
    equal modulus with certified rational intervals, pairwise disjoint.

    Returns (classes, hit_cap).  When the escalation cap is reached,
    still-overlapping classes are merged pessimistically and flagged.
    """
    exact_boxes: list[_RootBox] = []
    numeric_parts: list[tuple[int, ExactPoly]] = []
    for idx, (h, _) in enumerate(parts):
        boxes, rest = _exact_roots_of_part(h, idx)
        exact_boxes.extend(boxes)
        if rest.degree >= 1:
            numeric_parts.append((idx, rest))

    neg_pairs_poly = ExactPoly.one()
    if numeric_parts:
        radical = ExactPoly.one()
        for _, h in numeric_parts:
            radical = radical * h
        neg_pairs_poly = poly_gcd(radical, radical.reflect())

    bits = start_bits
    while True:
        try:
            classes = _build_classes(
                exact_boxes, numeric_parts, neg_pairs_poly, width, bits
            )
        except _NeedMoreBits:
            if bits >= max_bits:
                raise PrecisionExhausted(
                    "could not certify root positions at %d bits" % bits
                )
            bits *= 2
            continue
        _separate_proven(classes)
        unresolved = any(
            classes[a].overlaps(classes[b])
            for a, b in itertools.combinations(range(len(classes)), 2)
        )
        too_wide = any(
            not c.proven and c.hi - c.lo > width for c in classes
        )
        if not unresolved and not too_wide:
            return classes, False
        if bits >= max_bits:
            return _merge_overlapping(classes), True
        bits *= 2


def root_moduli(
    h: ExactPoly, precision: int = 53
) -> list[tuple[complex, tuple[Fraction, Fraction]]]:
    """All complex roots of a squarefree polynomial, approximated, with
    certified modulus intervals of width <= 2**-precision; intervals of
    distinct moduli are refined until disjoint.  Raises PrecisionExhausted
    when moduli stay inseparable at the escalation cap."""
    if precision < 1:
        raise DomainError("precision must be a positive number of bits")
    if h.is_zero or h.degree < 1:
        raise DomainError("root isolation needs a nonzero polynomial of degree >= 1")
    if poly_gcd(h, h.derivative()).degree != 0:
        raise DomainError("root isolation requires a squarefree polynomial")
    width = Fraction(1, 2**precision)
    start = max(START_BITS, precision + 48)
    classes, hit_cap = _modulus_classes(
        [(h, 1)], width, start_bits=start, max_bits=max(MAX_BITS, start * 2)
    )
    if hit_cap:
        raise PrecisionExhausted(
            "root moduli could not be separated at the escalation cap",
            classes=classes,
        )
    out = []
    for cls in classes:
        for z in cls.positions:
            out.append((z, (cls.lo, cls.hi)))
    out.sort(key=lambda item: (item[1][0], item[0].real, item[0].imag))
    return out


# ---------------------------------------------------------------------------
# Growth signature
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RootOfFactor:
    """Exact tag: the modulus is that of a root of ``factor``, its rank
    counted with root moduli sorted in decreasing order (0 = largest)."""

    factor: ExactPoly
    modulus_rank: int


@dataclass(frozen=True)
class GrowthSignature:
    """Certified growth data of M^n ~ rho^n * n^s.

    ``s + 1`` equals the largest multiplicity among ``dominant_factors``,
    the squarefree parts of the minimal polynomial having a root of
    modulus rho.  ``tied`` is set when distinct-looking moduli stayed
    inseparable at the precision cap and the conservative (larger) s was
    reported.
    """

    rho_interval: tuple[Fraction, Fraction]
    rho_float: float
    rho_exact: Optional[Union[Fraction, RootOfFactor]]
    s: int
    dominant_factors: tuple[tuple[ExactPoly, int], ...]
    tied: bool = False
    quasi_unipotent_k: Optional[int] = None

    @property
    def log_rho(self) -> float:
        return math.log(self.rho_float)


#: Process-wide defaults, overridable per call; the CLI sets them once at
#: dispatch (its command layer is single-threaded).
DEFAULTS = {"tolerance": DEFAULT_TOLERANCE, "max_bits": MAX_BITS}


def growth_signature(
    m: ExactMatrix,
    tolerance: Union[Fraction, float, None] = None,
    max_bits: Optional[int] = None,
) -> GrowthSignature:
    """Spectral radius and polynomial growth rate of a non-nilpotent matrix.

    rho is the maximal root modulus of the minimal polynomial; s is one
    less than the largest multiplicity among squarefree parts attaining it.
    Integer quasi-unipotent matrices short-circuit: rho = 1 exactly and
    s = nilpotency_index(M^k - I) - 1 for the quasi-unipotence order k.
    """
    if tolerance is None:
        tolerance = DEFAULTS["tolerance"]
    if max_bits is None:
        max_bits = DEFAULTS["max_bits"]
    p = min_poly(m)
    parts = squarefree_decomposition(p)
    if len(parts) == 1 and _is_power_of_x(parts[0][0]):
        raise NilpotentInput("growth data is undefined for nilpotent matrices")

    if m.is_integer:
        k = quasi_unipotent_order(m)
        if k is not None:
            idx = nilpotency_index(m**k - ExactMatrix.identity(m.n))
            s = idx - 1
            if s != max(mult for _, mult in parts) - 1:
                raise AssertionError(
                    "quasi-unipotent fast path disagrees with min-poly multiplicities"
                )
            return GrowthSignature(
                rho_interval=(Fraction(1), Fraction(1)),
                rho_float=1.0,
                rho_exact=Fraction(1),
                s=s,
                dominant_factors=tuple(parts),
                quasi_unipotent_k=k,
            )

    width = tolerance if isinstance(tolerance, Fraction) else Fraction(tolerance)
    classes, hit_cap = _modulus_classes(parts, width, max_bits=max_bits)

    top = max(classes, key=lambda c: c.lo)
    tied = top.merged_at_cap
    if tied:
        warnings.warn(
            "root moduli inseparable at the precision cap; reporting the "
            "conservative larger growth exponent",
            TiedModuli,
        )

    dom_factors = tuple(
        (h, mult) for idx, (h, mult) in enumerate(parts) if idx in top.parts
    )
    s = max(mult for _, mult in dom_factors) - 1

    lo, hi = top.lo, top.hi
    rho_exact: Optional[Union[Fraction, RootOfFactor]] = None
    if top.proven:
        root = _fraction_sqrt(top.exact_sq)
        if root is not None:
            rho_exact = root
            lo = hi = root
    if rho_exact is None and not tied and len(top.parts) == 1:
        rho_exact = RootOfFactor(
            factor=parts[next(iter(top.parts))][0], modulus_rank=0
        )

    rho_float = _interval_midpoint_float(lo, hi)
    # The reported float must lie inside the certified interval; hull in
    # its rounding error (at most half an ulp, far below any tolerance).
    as_fraction = Fraction(rho_float)
    lo, hi = min(lo, as_fraction), max(hi, as_fraction)
    return GrowthSignature(
        rho_interval=(lo, hi),
        rho_float=rho_float,
        rho_exact=rho_exact,
        s=s,
        dominant_factors=dom_factors,
        tied=tied,
    )


def _is_power_of_x(h: ExactPoly) -> bool:
    return h.degree >= 1 and all(c == 0 for c in h.coefficients[:-1])


def _fraction_sqrt(m2: Fraction) -> Optional[Fraction]:
    num = math.isqrt(m2.numerator)
    den = math.isqrt(m2.denominator)
    if num * num == m2.numerator and den * den == m2.denominator:
        return Fraction(num, den)
    return None


def _interval_midpoint_float(lo: Fraction, hi: Fraction) -> float:
    mid = (lo + hi) / 2
    return mid.numerator / mid.denominator
