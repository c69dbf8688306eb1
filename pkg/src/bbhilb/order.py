"""Quasi-homogeneous orders on monomials.

A :class:`QHOrder` compares exponents by the weight ``f(e) = sum e_i xi_i``.
Without a tie-break it is only a partial order; with a :class:`SignedOrder` it
becomes the total order that compares signed exponents lexicographically on
ties.  Polarity ``-1`` reverses the tie-break, so the canonical pair
``(+, -)`` agree off ties and disagree on every tie.
"""

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, ParseError, UndeterminedPolarity, ZeroPolynomial


class Cmp(enum.Enum):
    LESS = "less"
    GREATER = "greater"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


def clear_weight(xi):
    """Scale a rational weight vector to integers by the lcm of its denominators."""
    fr = [Fraction(v) for v in xi]
    lcm = 1
    for v in fr:
        lcm = lcm * v.denominator // math.gcd(lcm, v.denominator)
    return tuple(int(v * lcm) for v in fr)


@dataclass(frozen=True)
class SignedOrder:
    """Signs per variable plus a priority permutation.

    ``perm`` lists variable indices from most to least significant and
    ``signs[i]`` is the sign attached to variable ``i``.
    """

    signs: tuple
    perm: tuple

    def __post_init__(self):
        d = len(self.signs)
        if sorted(self.perm) != list(range(d)):
            raise ValueError(f"perm {self.perm} is not a permutation of 0..{d - 1}")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be +1 or -1")

    @classmethod
    def standard(cls, d):
        return cls((1,) * d, tuple(range(d)))

    def signed(self, e):
        return tuple(self.signs[i] * e[i] for i in self.perm)

    def __str__(self):
        return ",".join(f"{'+' if self.signs[i] > 0 else '-'}{i + 1}" for i in self.perm)


class QHOrder:
    """Quasi-homogeneous order of weight ``weight``."""

    __slots__ = ("weight", "tiebreak", "polarity", "d")

    def __init__(self, weight, tiebreak=None, polarity=1):
        self.weight = clear_weight(weight)
        self.d = len(self.weight)
        if tiebreak is not None and len(tiebreak.signs) != self.d:
            raise DimensionMismatch("tie-break and weight have different lengths")
        if polarity not in (1, -1):
            raise ValueError("polarity must be +1 or -1")
        self.tiebreak = tiebreak
        self.polarity = polarity

    @property
    def is_total(self):
        return self.tiebreak is not None

    def f(self, e):
        return sum(a * w for a, w in zip(e, self.weight))

    def key(self, e):
        """Sort key: increasing key means increasing in the order (total orders only)."""
        if self.tiebreak is None:
            raise ValueError("key() needs a total order")
        s = self.tiebreak.signed(e)
        if self.polarity < 0:
            s = tuple(-v for v in s)
        return (self.f(e), s)

    def compare(self, a, b):
        a, b = tuple(a), tuple(b)
        if len(a) != self.d or len(b) != self.d:
            raise DimensionMismatch("exponent length does not match the weight")
        if a == b:
            return Cmp.EQUAL
        fa, fb = self.f(a), self.f(b)
        if fa != fb:
            return Cmp.LESS if fa < fb else Cmp.GREATER
        if self.tiebreak is None:
            return Cmp.INCOMPARABLE
        return Cmp.LESS if self.key(a) < self.key(b) else Cmp.GREATER

    def less(self, a, b):
        return self.compare(a, b) is Cmp.LESS

    def effective_sign(self, i):
        w = self.weight[i]
        if w > 0:
            return 1
        if w < 0:
            return -1
        if self.tiebreak is None:
            raise UndeterminedPolarity(f"x{i + 1} has weight 0 and the order is partial")
        return self.tiebreak.signs[i] * self.polarity

    def variable_polarity(self):
        """+1 for positive and -1 for negative variables."""
        return tuple(self.effective_sign(i) for i in range(self.d))

    def negative_variables(self):
        return [i for i, s in enumerate(self.variable_polarity()) if s < 0]

    def positive_variables(self):
        return [i for i, s in enumerate(self.variable_polarity()) if s > 0]

    def sorted(self, exponents, reverse=False):
        return sorted(exponents, key=self.key, reverse=reverse)

    def leading_exponent(self, exponents):
        return max(exponents, key=self.key)

    def with_tiebreak(self, tiebreak, polarity=None):
        return QHOrder(self.weight, tiebreak, self.polarity if polarity is None else polarity)

    def __eq__(self, other):
        return (
            isinstance(other, QHOrder)
            and self.weight == other.weight
            and self.tiebreak == other.tiebreak
            and self.polarity == other.polarity
        )

    def __hash__(self):
        return hash((self.weight, self.tiebreak, self.polarity))

    def __repr__(self):
        return f"QHOrder({self})"

    def __str__(self):
        s = "w=(" + ",".join(str(v) for v in self.weight) + ")"
        if self.tiebreak is not None:
            s += f";tiebreak={self.tiebreak};polarity={'+' if self.polarity > 0 else '-'}"
        return s


def initial_form(f, order):
    """Sum of the maximal terms of ``f``; a single term when ``order`` is total."""
    if f.is_zero():
        raise ZeroPolynomial("the zero polynomial has no initial form")
    from .poly import Polynomial

    if order.is_total:
        e = order.leading_exponent(f.support())
        return Polynomial({e: f.coefficient(e)}, f.d, f.ring)
    top = max(order.f(e) for e in f.support())
    return Polynomial({e: c for e, c in f.terms if order.f(e) == top}, f.d, f.ring)


def canonical_pair(weight):
    """The (+, -) pair of total orders: all-plus signs, identity priority."""
    w = clear_weight(weight)
    tb = SignedOrder.standard(len(w))
    return QHOrder(w, tb, 1), QHOrder(w, tb, -1)


_ORDER_FIELD = re.compile(r"^\s*(w|tiebreak|polarity)\s*=\s*(.*?)\s*$")


def parse_weight(text):
    s = text.strip()
    if s.startswith("(") and s.endswith(")"):
        s = s[1:-1]
    try:
        vals = [Fraction(v.strip()) for v in s.split(",") if v.strip()]
    except ValueError:
        raise ParseError(f"cannot parse weight {text!r}") from None
    if not vals:
        raise ParseError("empty weight")
    return vals


def parse_tiebreak(text, d):
    items = [v.strip() for v in text.split(",") if v.strip()]
    signs = [0] * d
    perm = []
    for item in items:
        m = re.fullmatch(r"([+-])?(\d+)", item)
        if not m:
            raise ParseError(f"bad tie-break entry {item!r}")
        i = int(m.group(2)) - 1
        if not 0 <= i < d or i in perm:
            raise ParseError(f"tie-break entry {item!r} is out of range or repeated")
        perm.append(i)
        signs[i] = -1 if m.group(1) == "-" else 1
    if len(perm) != d:
        raise ParseError(f"tie-break must list all {d} variables")
    return SignedOrder(tuple(signs), tuple(perm))


def parse_order(text):
    """Parse ``w=(1,-1);tiebreak=+1,+2;polarity=+``.

    ``tiebreak`` lists signed variable indices by decreasing priority.  A
    ``polarity`` without ``tiebreak`` uses the standard all-plus tie-break.
    """
    fields = {}
    for part in text.split(";"):
        if not part.strip():
            continue
        m = _ORDER_FIELD.match(part)
        if not m:
            raise ParseError(f"bad order field {part!r}")
        fields[m.group(1)] = m.group(2)
    if "w" not in fields:
        raise ParseError("order needs a weight w=(...)")
    w = clear_weight(parse_weight(fields["w"]))
    d = len(w)
    tb = None
    if "tiebreak" in fields:
        tb = parse_tiebreak(fields["tiebreak"], d)
    polarity = 1
    if "polarity" in fields:
        p = fields["polarity"]
        if p not in ("+", "-", "+1", "-1"):
            raise ParseError(f"bad polarity {p!r}")
        polarity = -1 if p.startswith("-") else 1
        if tb is None:
            tb = SignedOrder.standard(d)
    return QHOrder(w, tb, polarity)
