"""Exact scalars: arbitrary-precision rationals, prime fields Z/p, extended reals.

Every grade coordinate, distance and threshold in this package is a
`fractions.Fraction`; coefficient arithmetic happens in a prime field or in Q.
Nothing here ever touches floating point.
"""

from fractions import Fraction
import math

Rational = Fraction


def parse_rational(text):
    """Parse `a/b`, integer `a`, or exact decimal `a.b` into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {text!r}") from exc


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# ---------------------------------------------------------------------------
# Extended reals
# ---------------------------------------------------------------------------

class ExtendedRational:
    """A rational extended with +inf/-inf, totally ordered, with x + inf = inf.

    inf + (-inf) is undefined and raises.  -inf only ever shows up as a
    diagram birth coordinate; the arithmetic here is what the bottleneck
    metric needs (differences, absolute values, max, halving).
    """

    __slots__ = ("kind", "value")
    # kind: -1 = -inf, 0 = finite, 1 = +inf

    def __init__(self, kind, value=None):
        self.kind = kind
        self.value = Fraction(value) if kind == 0 else None

    @classmethod
    def of(cls, x):
        if isinstance(x, ExtendedRational):
            return x
        return cls(0, Fraction(x))

    @property
    def is_finite(self):
        return self.kind == 0

    def _key(self):
        # totally ordered key; finite values ordered by value
        return (self.kind, self.value if self.kind == 0 else 0)

    def __eq__(self, other):
        try:
            other = ExtendedRational.of(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.kind == other.kind and self.value == other.value

    def __lt__(self, other):
        other = ExtendedRational.of(other)
        if self.kind != other.kind:
            return self.kind < other.kind
        if self.kind != 0:
            return False
        return self.value < other.value

    def __le__(self, other):
        return self == other or self < other

    def __gt__(self, other):
        return ExtendedRational.of(other) < self

    def __ge__(self, other):
        return ExtendedRational.of(other) <= self

    def __hash__(self):
        return hash(("ext", self.kind, self.value))

    def __add__(self, other):
        other = ExtendedRational.of(other)
        if self.kind == 0 and other.kind == 0:
            return ExtendedRational(0, self.value + other.value)
        kinds = {self.kind, other.kind}
        if kinds == {1, -1}:
            raise ArithmeticError("inf + (-inf) is undefined")
        return ExtendedRational(1 if 1 in kinds else -1)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.kind == 0:
            return ExtendedRational(0, -self.value)
        return ExtendedRational(-self.kind)

    def __sub__(self, other):
        return self + (-ExtendedRational.of(other))

    def __rsub__(self, other):
        return ExtendedRational.of(other) + (-self)

    def __abs__(self):
        if self.kind == 0:
            return ExtendedRational(0, abs(self.value))
        return ExtendedRational(1)

    def __mul__(self, other):
        # only rational scaling is needed (halving candidate values)
        q = Fraction(other)
        if self.kind == 0:
            return ExtendedRational(0, self.value * q)
        if q == 0:
            raise ArithmeticError("0 * inf is undefined")
        return ExtendedRational(self.kind if q > 0 else -self.kind)

    __rmul__ = __mul__

    def __repr__(self):
        if self.kind == 1:
            return "inf"
        if self.kind == -1:
            return "-inf"
        return format_rational(self.value)


INF = ExtendedRational(1)
NEG_INF = ExtendedRational(-1)


def ext(x):
    return ExtendedRational.of(x)


def parse_extended(text):
    t = text.strip()
    if t in ("inf", "+inf", "oo"):
        return INF
    if t == "-inf":
        return NEG_INF
    return ExtendedRational.of(parse_rational(t))


# ---------------------------------------------------------------------------
# Coefficient fields
# ---------------------------------------------------------------------------

def _is_prime(p):
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


class PrimeField:
    """Z/p for a prime p <= 2**31.  Elements are canonical ints in [0, p)."""

    def __init__(self, p):
        p = int(p)
        if p > 2 ** 31:
            raise ValueError(f"prime too large: {p}")
        if not _is_prime(p):
            raise ValueError(f"not prime: {p}")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def of(self, x):
        return int(x) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def elements(self):
        return range(self.p)

    @property
    def spec(self):
        return f"zp {self.p}"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("zp", self.p))

    def __repr__(self):
        return f"PrimeField({self.p})"


class RationalField:
    """The field Q; elements are Fractions."""

    zero = Fraction(0)
    one = Fraction(1)

    def of(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / Fraction(b)

    @property
    def spec(self):
        return "q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("q")

    def __repr__(self):
        return "RationalField()"


QQ = RationalField()


def parse_field(tokens):
    """Parse a field spec: ['q'] or ['zp', '7']."""
    if isinstance(tokens, str):
        tokens = tokens.split()
    if tokens[0] == "q":
        return QQ
    if tokens[0] == "zp":
        return PrimeField(int(tokens[1]))
    raise ValueError(f"unknown field spec: {' '.join(tokens)}")


def bracket_sqrt(q, tol_log2=20):
    """Rational [lo, hi] with lo <= sqrt(q) <= hi and hi - lo <= 2**-tol_log2."""
    q = Fraction(q)
    if q < 0:
        raise ValueError("sqrt of negative")
    scale = 1 << (2 * tol_log2 + 2)
    n = (q.numerator * scale * scale) // q.denominator
    r = math.isqrt(n)
    lo = Fraction(r, scale)
    hi = Fraction(r + 1, scale)
    return lo, hi
