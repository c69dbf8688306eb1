"""Exact coefficient rings: the rationals and truncated dual numbers Q[eps]/(eps^N).

Rationals are plain :class:`fractions.Fraction` values.  Dual numbers are
immutable :class:`DualNumber` instances tagged with their truncation order.
"""

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC

from .errors import DivisionByNonUnit, MixedRings

MAX_DUAL_ORDER = 16


def _as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)) and not isinstance(x, bool):
        return Fraction(x)
    raise MixedRings(f"cannot interpret {x!r} as a rational number")


class DualNumber:
    """Element c0 + c1*eps + ... + c_{N-1}*eps^(N-1) with eps^N = 0."""

    __slots__ = ("_c",)

    def __init__(self, coefficients, order=None):
        c = [_as_fraction(v) for v in coefficients]
        if order is None:
            order = len(c)
        if not 1 <= order <= MAX_DUAL_ORDER:
            raise ValueError(f"dual-number order must lie in [1, {MAX_DUAL_ORDER}]")
        c = (c + [Fraction(0)] * order)[:order]
        self._c = tuple(c)

    @classmethod
    def eps(cls, order, power=1):
        c = [0] * order
        if power < order:
            c[power] = 1
        return cls(c, order)

    @property
    def order(self):
        return len(self._c)

    @property
    def coefficients(self):
        return self._c

    def _coerce(self, other):
        if isinstance(other, DualNumber):
            if other.order != self.order:
                raise MixedRings(
                    f"dual numbers of orders {self.order} and {other.order} cannot be mixed"
                )
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return DualNumber([other], self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return DualNumber([a + b for a, b in zip(self._c, other._c)])

    __radd__ = __add__

    def __neg__(self):
        return DualNumber([-a for a in self._c])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return DualNumber([a - b for a, b in zip(self._c, other._c)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        N = self.order
        out = [Fraction(0)] * N
        for i, a in enumerate(self._c):
            if not a:
                continue
            for j in range(N - i):
                b = other._c[j]
                if b:
                    out[i + j] += a * b
        return DualNumber(out)

    __rmul__ = __mul__

    def is_zero(self):
        return not any(self._c)

    def is_unit(self):
        return self._c[0] != 0

    def valuation(self):
        """Least i with a nonzero eps^i coefficient, or None for zero."""
        for i, a in enumerate(self._c):
            if a:
                return i
        return None

    def inverse(self):
        if not self.is_unit():
            raise DivisionByNonUnit(f"{self} is not a unit")
        N = self.order
        c = self._c
        inv = [Fraction(0)] * N
        inv[0] = 1 / c[0]
        for k in range(1, N):
            s = sum((c[j] * inv[k - j] for j in range(1, k + 1)), Fraction(0))
            inv[k] = -s * inv[0]
        return DualNumber(inv)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __eq__(self, other):
        if isinstance(other, DualNumber):
            return self._c == other._c
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._c[0] == other and not any(self._c[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self._c[1:]):
            return hash(self._c[0])
        return hash(("dual", self._c))

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"DualNumber({[str(a) for a in self._c]})"

    def __str__(self):
        parts = []
        for i, a in enumerate(self._c):
            if not a:
                continue
            if i == 0:
                parts.append(str(a))
                continue
            e = "eps" if i == 1 else f"eps^{i}"
            if a == 1:
                parts.append(e)
            elif a == -1:
                parts.append("-" + e)
            else:
                parts.append(f"{a}*{e}")
        if not parts:
            return "0"
        s = parts[0]
        for p in parts[1:]:
            s += " - " + p[1:] if p.startswith("-") else " + " + p
        return s


@dataclass(frozen=True)
class CoeffIdeal:
    """Ideal of a coefficient ring.

    Both supported rings are local principal, so every ideal is ``<eps^j>``
    for some j; ``level=None`` is the zero ideal and ``level=0`` the unit ideal.
    """

    level: object = None

    @property
    def is_zero(self):
        return self.level is None

    @property
    def is_unit(self):
        return self.level == 0

    def contains(self, other):
        if other.level is None:
            return True
        return self.level is not None and self.level <= other.level

    def __str__(self):
        if self.level is None:
            return "0"
        if self.level == 0:
            return "<1>"
        if self.level == 1:
            return "<eps>"
        return f"<eps^{self.level}>"


ZERO_IDEAL = CoeffIdeal(None)
UNIT_IDEAL = CoeffIdeal(0)


class _Ring:
    def add(self, a, b):
        return self.check(a) + self.check(b)

    def sub(self, a, b):
        return self.check(a) - self.check(b)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def neg(self, a):
        return -self.check(a)

    def div(self, a, b):
        a, b = self.check(a), self.check(b)
        if not self.is_unit(b):
            raise DivisionByNonUnit(f"{b} is not a unit of {self}")
        return a / b

    def is_zero(self, a):
        return not self.check(a)

    def ideal(self, gens):
        """Descriptor of the ideal generated by ``gens``."""
        best = None
        for g in gens:
            v = self.valuation(self.check(g))
            if v is not None and (best is None or v < best):
                best = v
        return CoeffIdeal(best)


class RationalField(_Ring):
    """The field Q; elements are :class:`Fraction`."""

    name = "QQ"
    order = 1

    def check(self, a):
        if isinstance(a, DualNumber):
            raise MixedRings("dual number used where a rational was expected")
        return _as_fraction(a)

    coerce = check

    def zero(self):
        return Fraction(0)

    def one(self):
        return Fraction(1)

    def is_unit(self, a):
        return self.check(a) != 0

    def valuation(self, a):
        return None if a == 0 else 0

    def expand(self, a):
        """Coefficient list over Q (length 1)."""
        return [a]

    def from_expansion(self, coeffs):
        return Fraction(coeffs[0])

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class DualRing(_Ring):
    """The ring Q[eps]/(eps^N)."""

    def __init__(self, order):
        if not 1 <= order <= MAX_DUAL_ORDER:
            raise ValueError(f"dual-number order must lie in [1, {MAX_DUAL_ORDER}]")
        self.order = order
        self.name = f"dual({order})"

    def check(self, a):
        if isinstance(a, DualNumber):
            if a.order != self.order:
                raise MixedRings(f"dual number of order {a.order} used in {self.name}")
            return a
        raise MixedRings(f"{a!r} is not an element of {self.name}")

    def coerce(self, a):
        if isinstance(a, DualNumber):
            return self.check(a)
        return DualNumber([_as_fraction(a)], self.order)

    def zero(self):
        return DualNumber([0], self.order)

    def one(self):
        return DualNumber([1], self.order)

    def eps(self, power=1):
        return DualNumber.eps(self.order, power)

    def is_unit(self, a):
        return self.check(a).is_unit()

    def valuation(self, a):
        return a.valuation()

    def expand(self, a):
        return list(a.coefficients)

    def from_expansion(self, coeffs):
        return DualNumber(coeffs, self.order)

    def residue(self, a):
        """Image under eps -> 0."""
        return self.check(a).coefficients[0]

    def __eq__(self, other):
        return isinstance(other, DualRing) and other.order == self.order

    def __hash__(self):
        return hash(("dual", self.order))

    def __repr__(self):
        return f"DualRing({self.order})"


QQ = RationalField()


def ring_of(value):
    """Infer the coefficient ring of a single value."""
    if isinstance(value, DualNumber):
        return DualRing(value.order)
    return QQ


def coeff_ideal(gens, ring=None):
    """Return the :class:`CoeffIdeal` generated by ``gens``.

    Raises :class:`MixedRings` when the generators live in different rings.
    """
    gens = list(gens)
    if ring is None:
        ring = ring_of(gens[0]) if gens else QQ
    return ring.ideal(gens)
