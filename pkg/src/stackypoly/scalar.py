"""Exact arithmetic in a real number field ``Q(alpha)``.

A field is given by the minimal polynomial of ``alpha`` (integer
coefficients, ascending degree) together with a rational interval that
isolates the real root we mean.  Elements are stored as coefficient vectors
over the power basis ``1, alpha, ..., alpha**(D-1)``.

Zero tests are symbolic.  Signs of nonzero elements are found by bisecting
the isolating interval until the interval enclosure of the element excludes
zero; the narrowest interval reached so far is cached on the field.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from typing import Iterable, Sequence

from . import poly

Rational = Fraction


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


class FieldError(ValueError):
    """Invalid field description."""


class RealAlgebraicField:
    """The real field ``Q(alpha)`` for one chosen real root ``alpha``.

    ``min_poly`` lists integer coefficients from the constant term upwards.
    For degree one the field is ``Q`` and ``root_interval`` is ignored.
    """

    def __init__(self, min_poly: Sequence[int], root_interval=None):
        coeffs = [int(c) for c in min_poly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        self.min_poly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        self._modulus = poly.monic(poly.normalize(coeffs))
        self.root_interval = (
            None if root_interval is None else tuple(as_fraction(x) for x in root_interval)
        )

        if self.degree == 1:
            root = -self._modulus[0]
            self._interval = (root, root, 0)
            self._powers: list[tuple] = []
            return

        if self.root_interval is None or len(self.root_interval) != 2:
            raise FieldError("a root interval (lo, hi) is required for degree >= 2")
        lo, hi = self.root_interval
        if not lo < hi:
            raise FieldError("root interval must satisfy lo < hi")
        if poly.gcd(self._modulus, poly.derivative(self._modulus)) != (Fraction(1),):
            raise FieldError("minimal polynomial is not squarefree")
        if not _is_irreducible(self.min_poly):
            raise FieldError("minimal polynomial is not irreducible over Q")
        s_lo = poly.sign_of(poly.evaluate(self._modulus, lo))
        s_hi = poly.sign_of(poly.evaluate(self._modulus, hi))
        if s_lo == 0 or s_hi == 0 or s_lo == s_hi:
            raise FieldError("minimal polynomial must change sign on the root interval")
        if poly.count_roots(self._modulus, lo, hi) != 1:
            raise FieldError("root interval does not isolate exactly one real root")
        self._interval = (lo, hi, s_lo)
        # alpha**k reduced, for k = D .. 2D-2
        self._powers = []
        cur = tuple(-c for c in self._modulus[:-1])
        for _ in range(self.degree - 1):
            self._powers.append(cur)
            shifted = (Fraction(0),) + cur[:-1]
            top = cur[-1]
            cur = tuple(shifted[i] + top * self._powers[0][i] for i in range(self.degree))

    @classmethod
    def rationals(cls) -> "RealAlgebraicField":
        return QQ

    @property
    def is_rational(self) -> bool:
        return self.degree == 1

    def __repr__(self) -> str:
        if self.is_rational:
            return "RealAlgebraicField(QQ)"
        lo, hi = self.root_interval
        return f"RealAlgebraicField({list(self.min_poly)}, ({lo}, {hi}))"

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, RealAlgebraicField):
            return NotImplemented
        if self.is_rational or other.is_rational:
            return self.is_rational and other.is_rational
        if self._modulus != other._modulus:
            return False
        lo = max(self._interval[0], other._interval[0])
        hi = min(self._interval[1], other._interval[1])
        if lo >= hi:
            return False
        a = poly.evaluate(self._modulus, lo)
        b = poly.evaluate(self._modulus, hi)
        return a * b < 0

    def __hash__(self) -> int:
        return hash(self._modulus) if not self.is_rational else hash(1)

    # -- element construction -------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, (int, Fraction, str)):
            return self.from_rational(as_fraction(value))
        coeffs = [as_fraction(c) for c in value]
        if len(coeffs) != self.degree:
            raise ValueError(f"expected {self.degree} coefficients, got {len(coeffs)}")
        return FieldElement(self, tuple(coeffs))

    def from_rational(self, x) -> "FieldElement":
        return FieldElement(self, (as_fraction(x),) + (Fraction(0),) * (self.degree - 1))

    @property
    def zero(self) -> "FieldElement":
        return self.from_rational(0)

    @property
    def one(self) -> "FieldElement":
        return self.from_rational(1)

    @property
    def gen(self) -> "FieldElement":
        """The generator ``alpha``."""
        if self.is_rational:
            return self.from_rational(self._interval[0])
        return FieldElement(self, (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.degree - 2))

    # -- internals used by FieldElement ----------------------------------

    def _reduce(self, p: Sequence[Fraction]) -> tuple:
        D = self.degree
        out = list(p[:D]) + [Fraction(0)] * (D - min(len(p), D))
        for k in range(D, len(p)):
            c = p[k]
            if c:
                power = self._powers[k - D]
                for i in range(D):
                    out[i] += c * power[i]
        return tuple(out)

    def _vanishes(self, p: poly.Poly) -> bool:
        # alpha is a simple root of the squarefree modulus, so it is a root of
        # g = gcd(p, modulus) iff g changes sign across an isolating interval.
        g = poly.gcd(p, self._modulus)
        if poly.degree(g) <= 0:
            return False
        lo, hi, _ = self._interval
        return poly.evaluate(g, lo) * poly.evaluate(g, hi) < 0

    def _refine(self) -> None:
        lo, hi, s_lo = self._interval
        mid = (lo + hi) / 2
        s_mid = poly.sign_of(poly.evaluate(self._modulus, mid))
        if s_mid == s_lo:
            self._interval = (mid, hi, s_lo)
        else:
            self._interval = (lo, mid, s_lo)

    def _enclose(self, p: poly.Poly) -> tuple[Fraction, Fraction]:
        lo, hi, _ = self._interval
        return poly.eval_interval(p, lo, hi)

    def isolating_interval(self) -> tuple[Fraction, Fraction]:
        """Current (possibly refined) isolating interval of ``alpha``."""
        lo, hi, _ = self._interval
        return lo, hi


def _is_irreducible(coeffs: Sequence[int]) -> bool:
    import sympy

    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed(coeffs)), x, domain="QQ").is_irreducible


@total_ordering
class FieldElement:
    """An immutable element ``c0 + c1*alpha + ...`` of a :class:`RealAlgebraicField`."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: RealAlgebraicField, coeffs: tuple):
        self.field = field
        self.coeffs = coeffs

    # -- coercion ---------------------------------------------------------

    def _coerce(self, other) -> "FieldElement | None":
        if isinstance(other, FieldElement):
            if other.field is not self.field and other.field != self.field:
                raise ValueError("cannot combine elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.field, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.field, tuple(a * other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.field.degree == 1:
            return FieldElement(self.field, (self.coeffs[0] * o.coeffs[0],))
        prod = [Fraction(0)] * (2 * self.field.degree - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    if b:
                        prod[i + j] += a * b
        return FieldElement(self.field, self.field._reduce(prod))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in number field")
        if self.field.degree == 1:
            return FieldElement(self.field, (1 / self.coeffs[0],))
        g, s, _ = poly.xgcd(poly.normalize(self.coeffs), self.field._modulus)
        # modulus is irreducible, so g == 1 for every nonzero element
        return FieldElement(self.field, self.field._reduce(s))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in number field")
            return FieldElement(self.field, tuple(a / other for a in self.coeffs))
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result, base = self.field.one, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- exact sign and order --------------------------------------------

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.coeffs[0]

    def is_zero(self) -> bool:
        if self.is_rational():
            return self.coeffs[0] == 0
        return self.field._vanishes(poly.normalize(self.coeffs))

    def sign(self) -> int:
        if self.is_rational():
            return poly.sign_of(self.coeffs[0])
        p = poly.normalize(self.coeffs)
        if self.field._vanishes(p):
            return 0
        while True:
            a, b = self.field._enclose(p)
            if a > 0:
                return 1
            if b < 0:
                return -1
            self.field._refine()

    def approx(self, eps) -> Fraction:
        """A rational within ``eps`` of this element."""
        eps = as_fraction(eps)
        if eps <= 0:
            raise ValueError("eps must be positive")
        if self.is_rational():
            return self.coeffs[0]
        p = poly.normalize(self.coeffs)
        while True:
            a, b = self.field._enclose(p)
            if b - a < eps:
                return (a + b) / 2
            self.field._refine()

    def __float__(self) -> float:
        return float(self.approx(Fraction(1, 2**60)))

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            o = self._coerce(other)
        except ValueError:
            return False
        if o is None:
            return NotImplemented
        # coefficient vectors are canonical: the modulus is irreducible
        return self.coeffs == o.coeffs

    def __lt__(self, other) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- text -------------------------------------------------------------

    def to_text(self) -> str:
        return "[" + ", ".join(format_rational(c) for c in self.coeffs) + "]"

    def __repr__(self) -> str:
        return f"FieldElement({self.to_text()})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                terms.append(str(c))
            else:
                mono = "α" if k == 1 else f"α^{k}"
                terms.append(mono if c == 1 else f"-{mono}" if c == -1 else f"{c}*{mono}")
        if not terms:
            return "0"
        out = terms[0]
        for t in terms[1:]:
            out += f" - {t[1:]}" if t.startswith("-") else f" + {t}"
        return out


def parse_element(field: RealAlgebraicField, text) -> FieldElement:
    """Parse ``"[p/q, ...]"`` (or an already split list) into a field element."""
    if isinstance(text, str):
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError(f"field element must be bracketed: {text!r}")
        parts = [p for p in body[1:-1].split(",") if p.strip()]
    else:
        parts = list(text)
    return field([as_fraction(p) for p in parts])


def vector(field: RealAlgebraicField, values: Iterable) -> tuple:
    return tuple(field(v) for v in values)


QQ = RealAlgebraicField([0, 1])
