"""Exact rational and cyclotomic arithmetic.

Every coefficient in the package lives in a cyclotomic field Q(zeta_N),
stored as Q[t]/Phi_N(t).  Rationals are plain :class:`fractions.Fraction`
values; the field with ``N == 1`` is Q itself.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
import cmath

from .errors import FieldMismatchError

Rational = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


# -- dense univariate helpers (coefficient lists, lowest degree first) -------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _pmul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _psub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _pdivmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [_ZERO] * max(len(a) - len(b) + 1, 0)
    r = list(a)
    lead = b[-1]
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        coef = Fraction(r[-1]) / lead
        q[shift] = coef
        for i, y in enumerate(b):
            r[shift + i] -= coef * y
        r = _trim(r)
    return _trim(q), r


def _divisors(n):
    return [m for m in range(1, n + 1) if n % m == 0]


@lru_cache(maxsize=None)
def _cyclotomic(n):
    num = [-_ONE] + [_ZERO] * (n - 1) + [_ONE]
    for m in _divisors(n):
        if m == n:
            continue
        num, rem = _pdivmod(num, list(_cyclotomic(m)))
        assert not rem
    return tuple(num)


def cyclotomic_polynomial(N):
    """Return Phi_N as a list of Fractions, constant term first.

    Computed by exact division of t^N - 1 by Phi_m for every proper divisor m.
    """
    if N < 1:
        raise ValueError(f"cyclotomic order must be positive, got {N}")
    return list(_cyclotomic(N))


# -- the field ---------------------------------------------------------------

class CycloField:
    """The cyclotomic field Q(zeta_N) presented as Q[t]/Phi_N(t).

    Instances are interned per root order; use :meth:`of`.
    """

    _cache: dict = {}

    def __new__(cls, root_order):
        root_order = int(root_order)
        if root_order < 1:
            raise ValueError(f"root order must be positive, got {root_order}")
        field = cls._cache.get(root_order)
        if field is None:
            field = super().__new__(cls)
            field._setup(root_order)
            cls._cache[root_order] = field
        return field

    @classmethod
    def of(cls, root_order):
        return cls(root_order)

    def _setup(self, N):
        self.root_order = N
        self.modulus = tuple(_cyclotomic(N))
        self.degree = len(self.modulus) - 1
        deg = self.degree
        # t^k mod Phi_N for deg <= k < 2*deg - 1, used to fold products
        table = []
        cur = [_ZERO] * deg
        # start from t^(deg-1) and multiply by t repeatedly
        cur[deg - 1] = _ONE
        for _ in range(deg, 2 * deg - 1):
            cur = self._times_t(cur)
            table.append(tuple(cur))
        self._fold = table
        self._tail = (_ZERO,) * (deg - 1)
        self.zero = CycloScalar._raw(self, (_ZERO,) * deg)
        self.one = self.from_rational(1)
        t = [_ZERO] * max(deg, 2)
        t[1] = _ONE
        self.zeta = CycloScalar._raw(self, self._reduce(t))
        self._zeta_powers = {}

    def _times_t(self, coords):
        deg = self.degree
        top = coords[-1]
        out = [_ZERO] + list(coords[:-1])
        if top:
            for i in range(deg):
                out[i] -= top * self.modulus[i]
        return out

    def _reduce(self, poly):
        """Reduce a coefficient list modulo Phi_N to exactly ``degree`` coords."""
        deg = self.degree
        if len(poly) <= deg:
            return tuple(Fraction(c) for c in poly) + (_ZERO,) * (deg - len(poly))
        _, r = _pdivmod([Fraction(c) for c in poly], list(self.modulus))
        return tuple(r) + (_ZERO,) * (deg - len(r))

    def __reduce__(self):
        return (CycloField, (self.root_order,))

    def __repr__(self):
        return f"CycloField({self.root_order})"

    def __eq__(self, other):
        return isinstance(other, CycloField) and other.root_order == self.root_order

    def __hash__(self):
        return hash(("CycloField", self.root_order))

    def from_rational(self, q):
        if type(q) is not Fraction:
            q = Fraction(q)
        s = object.__new__(CycloScalar)
        s.field = self
        s.coords = (q,) + self._tail
        s._rational = True
        return s

    def from_coords(self, coords):
        return CycloScalar._raw(self, self._reduce(list(coords)))

    def coerce(self, x):
        if isinstance(x, CycloScalar):
            if x.field is not self:
                raise FieldMismatchError(f"scalar in {x.field!r} used with {self!r}")
            return x
        if isinstance(x, (int, _RationalABC)):
            return self.from_rational(x)
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def zeta_power(self, k):
        """zeta_N ** k for any integer k (reduced mod N first)."""
        k %= self.root_order
        z = self._zeta_powers.get(k)
        if z is None:
            z = self.one
            for _ in range(k):
                z = z * self.zeta
            self._zeta_powers[k] = z
        return z


class CycloScalar:
    """An element of Q(zeta_N), stored as its reduced representative."""

    __slots__ = ("field", "coords", "_rational")

    @classmethod
    def _raw(cls, field, coords):
        self = object.__new__(cls)
        self.field = field
        self.coords = coords
        self._rational = not any(coords[1:])
        return self

    def __init__(self, field, coords):
        red = field._reduce(list(coords))
        self.field = field
        self.coords = red
        self._rational = not any(red[1:])

    def __reduce__(self):
        return (CycloScalar, (self.field, self.coords))

    # -- predicates --

    def is_zero(self):
        return self._rational and self.coords[0] == 0

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self):
        return self._rational

    def to_rational(self):
        if not self._rational:
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    # -- arithmetic --

    def _other(self, other):
        if isinstance(other, CycloScalar):
            if other.field is not self.field:
                raise FieldMismatchError(
                    f"mismatched fields {self.field!r} and {other.field!r}")
            return other
        if isinstance(other, (int, _RationalABC)):
            return self.field.from_rational(other)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self._rational and other._rational:
            return self.field.from_rational(self.coords[0] + other.coords[0])
        return CycloScalar._raw(
            self.field, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        if self._rational:
            return self.field.from_rational(-self.coords[0])
        return CycloScalar._raw(self.field, tuple(-a for a in self.coords))

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self._rational and other._rational:
            return self.field.from_rational(self.coords[0] - other.coords[0])
        return CycloScalar._raw(
            self.field, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __rsub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other._rational:
            s = other.coords[0]
            if self._rational:
                return self.field.from_rational(self.coords[0] * s)
            return CycloScalar._raw(self.field, tuple(a * s for a in self.coords))
        if self._rational:
            s = self.coords[0]
            return CycloScalar._raw(self.field, tuple(s * b for b in other.coords))
        field = self.field
        deg = field.degree
        prod = [_ZERO] * (2 * deg - 1)
        for i, a in enumerate(self.coords):
            if a:
                for j, b in enumerate(other.coords):
                    if b:
                        prod[i + j] += a * b
        out = prod[:deg]
        for k, c in enumerate(prod[deg:]):
            if c:
                for i, r in enumerate(field._fold[k]):
                    if r:
                        out[i] += c * r
        return CycloScalar._raw(field, tuple(out))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("division by zero in cyclotomic field")
        if self._rational:
            return self.field.from_rational(1 / self.coords[0])
        # extended Euclid: s*a + u*Phi = 1
        field = self.field
        r0, r1 = list(field.modulus), _trim(self.coords)
        s0, s1 = [], [_ONE]
        while len(r1) > 1:
            q, r = _pdivmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _psub(s0, _pmul(q, s1))
        c = r1[0]
        s1 = [x / c for x in s1]
        return field.from_coords(s1)

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        k = int(k)
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison / hashing --

    def __eq__(self, other):
        if isinstance(other, CycloScalar):
            return self.field is other.field and self.coords == other.coords
        if isinstance(other, (int, _RationalABC)):
            return self._rational and self.coords[0] == other
        return NotImplemented

    def __hash__(self):
        if self._rational:
            return hash(self.coords[0])
        return hash((self.field.root_order, self.coords))

    # -- display --

    def render(self, var="z"):
        """Exact string; rationals print bare, others as a polynomial in ``var``."""
        if self._rational:
            return _frac_str(self.coords[0])
        parts = []
        for k, c in enumerate(self.coords):
            if not c:
                continue
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = abs(c)
            if not mono:
                body = _frac_str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_frac_str(mag)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"CycloScalar(N={self.field.root_order}, {self.render()})"

    def to_complex(self):
        """Numeric value at zeta_N = exp(2*pi*i/N).  Display only."""
        z = cmath.exp(2j * cmath.pi / self.field.root_order)
        return sum(float(c) * z ** k for k, c in enumerate(self.coords))


def _frac_str(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def field_arith(a, b, op):
    """Apply ``op`` in {'add','sub','mul','div','pow_int'} to two field elements.

    For ``pow_int`` the second argument is an integer exponent.
    """
    if op == "pow_int":
        return a ** int(b)
    if isinstance(b, CycloScalar) and b.field is not a.field:
        raise FieldMismatchError(f"mismatched fields {a.field!r} and {b.field!r}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")
