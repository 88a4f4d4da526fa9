"""
Exact arithmetic in the real cyclotomic field Q(2cos(pi/N)).

Every entry -cos(pi/m) of a Tits form lives in the field generated by
gamma = 2cos(pi/N), where N is the lcm of the finite labels of the Coxeter
matrix. Elements are kept as polynomials in gamma reduced modulo its minimal
polynomial, so equality is an exact coefficient test. Signs are certified by
refining an isolating interval of gamma until the element's polynomial has no
root left in it.
"""
import math
import logging
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Tuple, Union

import mpmath
from sympy import Poly, QQ, Rational, cyclotomic_poly
from sympy.abc import x
from sympy.polys.polyclasses import ANP

from ..config import MAX_FIELD_N, PRECISION_CAP, DECIMAL_DIGITS
from ..utils import FieldTooLarge, InputError, InvariantError, PrecisionExhausted

logger = logging.getLogger(__file__)

INF = math.inf

Label = Union[int, float]
Rationalish = Union[int, Fraction]


def _to_fraction(c) -> Fraction:
    """Converts a sympy ground-domain rational into a Fraction."""
    return Fraction(int(c.numerator), int(c.denominator))


def _to_rational(c: Fraction) -> Rational:
    return Rational(c.numerator, c.denominator)


def gamma_minpoly(N: int) -> Poly:
    """
    Minimal polynomial of 2cos(pi/N) over the integers.

    Obtained from the 2N-th cyclotomic polynomial: z^-d * Phi_2N(z) is a
    polynomial in z + 1/z, and z^j + z^-j = P_j(z + 1/z) with P_0 = 2,
    P_1 = x and P_{j+1} = x*P_j - P_{j-1}.
    """
    if N == 1:
        return Poly(x + 2, x, domain="ZZ")
    phi = cyclotomic_poly(2 * N, x, polys=True)
    coeffs = phi.all_coeffs()[::-1]
    d = phi.degree() // 2
    x_poly = Poly(x, x, domain="ZZ")
    minpoly = Poly(coeffs[d], x, domain="ZZ")
    prev, cur = Poly(2, x, domain="ZZ"), x_poly
    for j in range(1, d + 1):
        minpoly += cur * coeffs[d + j]
        prev, cur = cur, x_poly * cur - prev
    return minpoly


class FieldContext:
    """The field Q(gamma), gamma = 2cos(pi/N), shared by all entries of one Coxeter matrix."""

    def __init__(self, N: int):
        self.N = N
        self.minpoly = gamma_minpoly(N)
        self.degree = self.minpoly.degree()
        self._mod = [QQ(int(c)) for c in self.minpoly.all_coeffs()]
        self.bracket = self._initial_bracket() if self.degree > 1 else None
        logger.debug(f"Built field context N={N}, degree={self.degree}, minpoly={self.minpoly.as_expr()}.")

    def __eq__(self, other) -> bool:
        return isinstance(other, FieldContext) and other.N == self.N

    def __hash__(self) -> int:
        return hash(("FieldContext", self.N))

    def __repr__(self) -> str:
        return f"FieldContext(N={self.N}, degree={self.degree})"

    def _initial_bracket(self) -> Tuple[Rational, Rational]:
        """Rational interval isolating gamma among the roots of the minimal polynomial."""
        approx = 2 * math.cos(math.pi / self.N)
        pad = 4 * Rational(math.ulp(approx))
        for _ in range(8):
            lo, hi = Rational(approx) - pad, Rational(approx) + pad
            if self.minpoly.count_roots(lo, hi) == 1:
                return lo, hi
            pad *= 16
        raise InvariantError(f"Could not isolate 2cos(pi/{self.N}) near {approx}.")

    # --- constructors --- #
    def _wrap(self, rep: list) -> "Scalar":
        return Scalar(self, ANP(rep, self._mod, QQ))

    def from_rational(self, value: Rationalish) -> "Scalar":
        value = Fraction(value)
        return self._wrap([QQ(value.numerator, value.denominator)] if value else [])

    def from_coeffs(self, coeffs: Sequence[Rationalish]) -> "Scalar":
        """Builds the element sum(coeffs[k] * gamma^k), reducing modulo the minimal polynomial."""
        poly = Poly([_to_rational(Fraction(c)) for c in reversed(list(coeffs))] or [0], x, domain=QQ)
        reduced = poly.rem(self.minpoly.set_domain(QQ))
        return self._wrap([QQ(int(c.p), int(c.q)) for c in reduced.all_coeffs()] if not reduced.is_zero else [])

    @property
    def zero(self) -> "Scalar":
        return self._wrap([])

    @property
    def one(self) -> "Scalar":
        return self.from_rational(1)

    @property
    def gamma(self) -> "Scalar":
        return self.from_coeffs([0, 1])

    def cosine_multiple(self, k: int) -> "Scalar":
        """2cos(k*pi/N) through the recurrence p_{j+1} = gamma*p_j - p_{j-1}."""
        prev, cur = self.from_rational(2), self.gamma
        if k == 0:
            return prev
        for _ in range(k - 1):
            prev, cur = cur, self.gamma * cur - prev
        return cur


class Scalar:
    """An element of a FieldContext. Immutable; canonical form is the reduced coefficient list."""

    __slots__ = ("ctx", "_rep")

    def __init__(self, ctx: FieldContext, rep: ANP):
        self.ctx = ctx
        self._rep = rep

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        """Rational coefficients of 1, gamma, gamma^2, ... padded to the field degree."""
        low_first = [_to_fraction(c) for c in reversed(self._rep.to_list())]
        return tuple(low_first + [Fraction(0)] * (self.ctx.degree - len(low_first)))

    @property
    def key(self) -> tuple:
        """Hashable canonical key (stripped coefficient list, highest degree first)."""
        return tuple(self._rep.to_list())

    @property
    def is_zero(self) -> bool:
        return not self._rep.to_list()

    def _coerce(self, other) -> "Scalar":
        if isinstance(other, Scalar):
            if other.ctx != self.ctx:
                raise InvariantError(f"Mismatched field contexts: {self.ctx} and {other.ctx}.")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.from_rational(other)
        return NotImplemented

    def __add__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, self._rep + other._rep)

    __radd__ = __add__

    def __sub__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, self._rep - other._rep)

    def __rsub__(self, other) -> "Scalar":
        return (-self) + other

    def __mul__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Scalar(self.ctx, self._rep * other._rep)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Scalar":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.is_zero:
            raise ZeroDivisionError("division by the zero scalar")
        return Scalar(self.ctx, self._rep / other._rep)

    def __neg__(self) -> "Scalar":
        return Scalar(self.ctx, -self._rep)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = self.ctx.from_rational(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.ctx == other.ctx and self.key == other.key

    def __hash__(self) -> int:
        return hash((self.ctx.N, self.key))

    def __bool__(self) -> bool:
        return not self.is_zero

    def __repr__(self) -> str:
        terms = [f"{c}*g^{k}" if k else f"{c}" for k, c in enumerate(self.coeffs) if c]
        return f"Scalar(N={self.ctx.N}: {' + '.join(terms) or '0'})"

    def to_mpf(self, digits: int = DECIMAL_DIGITS) -> mpmath.mpf:
        """Numeric value at the requested number of decimal digits."""
        with mpmath.workdps(digits + 10):
            gamma = 2 * mpmath.cos(mpmath.pi / self.ctx.N)
            value = mpmath.mpf(0)
            for c in reversed(self.coeffs):
                value = value * gamma + mpmath.mpf(c.numerator) / c.denominator
            return +value

    def approx(self, digits: int = DECIMAL_DIGITS) -> str:
        """Decimal approximation string, stable across runs."""
        with mpmath.workdps(digits + 10):
            return mpmath.nstr(self.to_mpf(digits), digits)


# === Field construction === #
@lru_cache(maxsize=None)
def field_context(N: int) -> FieldContext:
    """The (cached) context for an explicit N."""
    if N < 1:
        raise InputError(f"Field order must be positive, got {N}.")
    return FieldContext(N)


def make_context(labels: Iterable[Label]) -> FieldContext:
    """Context for a set of Coxeter labels: N is the lcm of the finite labels other than 1 and 2."""
    labels = set(labels)
    if not labels:
        raise InputError("At least one label is required to build a field context.")
    N = 1
    for m in sorted(labels):
        if m == INF or m in (1, 2):
            continue
        if not isinstance(m, int) or m < 1:
            raise InputError(f"Invalid Coxeter label: {m!r}")
        N = N * m // math.gcd(N, m)
        if N > MAX_FIELD_N:
            raise FieldTooLarge(f"Labels {sorted(labels)} need N > {MAX_FIELD_N}; too large for exact mode.")
    return field_context(N)


def entry_from_label(m: Label, ctx: FieldContext) -> Scalar:
    """The exact value -cos(pi/m); m = inf gives -1 and m = 1 gives +1."""
    if m == 1:
        return ctx.one
    if m == 2:
        return ctx.zero
    if m == INF:
        return -ctx.one
    if not isinstance(m, int) or m < 1:
        raise InputError(f"Invalid Coxeter label: {m!r}")
    if ctx.N % m:
        raise InvariantError(f"Label {m} does not divide the field order N={ctx.N}.")
    return -ctx.cosine_multiple(ctx.N // m) / 2


# === Field operations === #
def add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def neg(a: Scalar) -> Scalar:
    return -a


@lru_cache(maxsize=None)
def _gamma_interval(N: int, bits: int) -> Tuple[Rational, Rational]:
    """Isolating interval of gamma of width at most 2^-bits."""
    ctx = field_context(N)
    lo, hi = ctx.bracket
    return ctx.minpoly.refine_root(lo, hi, eps=Rational(1, 2 ** bits))


def sign(a: Scalar) -> int:
    """Certified sign of a scalar: -1, 0 or +1."""
    if a.is_zero:
        return 0
    coeffs = a.coeffs
    if not any(coeffs[1:]):
        return 1 if coeffs[0] > 0 else -1
    poly = Poly([_to_rational(c) for c in reversed(coeffs)], x, domain=QQ)
    bits = 53
    for _ in range(PRECISION_CAP):
        lo, hi = _gamma_interval(a.ctx.N, bits)
        # No root of poly in [lo, hi] means poly keeps one sign on the whole interval.
        if poly.count_roots(lo, hi) == 0:
            return 1 if poly.eval(lo) > 0 else -1
        bits *= 2
    logger.error(f"Sign refinement exhausted for {a!r} after {PRECISION_CAP} doublings.")
    raise PrecisionExhausted(f"Could not certify the sign of {a!r} within {PRECISION_CAP} precision doublings.")


# === Exact matrices === #
Matrix = Tuple[Tuple[Scalar, ...], ...]
Vector = Tuple[Scalar, ...]


def identity(ctx: FieldContext, n: int) -> Matrix:
    return tuple(tuple(ctx.one if i == j else ctx.zero for j in range(n)) for i in range(n))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    ctx = a[0][0].ctx
    columns = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col) if x and y), ctx.zero) for col in columns) for row in a)


def mat_vec(a: Matrix, v: Sequence[Scalar]) -> Vector:
    ctx = a[0][0].ctx
    return tuple(sum((x * y for x, y in zip(row, v) if x and y), ctx.zero) for row in a)


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matrix_key(a: Matrix) -> tuple:
    """Concatenated canonical keys of all entries; equal keys iff equal matrices."""
    return tuple(entry.key for row in a for entry in row)


def is_identity(a: Matrix) -> bool:
    return all(entry == (1 if i == j else 0) for i, row in enumerate(a) for j, entry in enumerate(row))


def is_minus_identity(a: Matrix) -> bool:
    return all(entry == (-1 if i == j else 0) for i, row in enumerate(a) for j, entry in enumerate(row))
