"""Multivariate polynomials over a coefficient ring, the torus action, and a text parser."""

import re
from fractions import Fraction

from .coeff import QQ, DualNumber, DualRing
from .errors import DimensionMismatch, MixedRings, ParseError


def _key_desc(item):
    return item[0]


class Polynomial:
    """Immutable polynomial in ``d`` variables.

    Terms are stored as a tuple of ``(exponent, coefficient)`` pairs sorted by
    descending lexicographic exponent, so equality and hashing are structural.
    """

    __slots__ = ("ring", "d", "_terms", "_hash")

    def __init__(self, terms=None, d=None, ring=QQ):
        if isinstance(terms, dict):
            items = terms.items()
        else:
            items = terms or ()
        acc = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if d is None:
                d = len(e)
            elif len(e) != d:
                raise DimensionMismatch(f"exponent {e} does not have length {d}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent {e}")
            c = ring.coerce(c)
            acc[e] = acc[e] + c if e in acc else c
        if d is None:
            raise ValueError("dimension of the zero polynomial must be given")
        self.ring = ring
        self.d = d
        self._terms = tuple(sorted(((e, c) for e, c in acc.items() if c), key=_key_desc, reverse=True))
        self._hash = None

    @classmethod
    def _from_clean(cls, acc, d, ring):
        p = cls.__new__(cls)
        p.ring = ring
        p.d = d
        p._terms = tuple(sorted(((e, c) for e, c in acc.items() if c), key=_key_desc, reverse=True))
        p._hash = None
        return p

    @classmethod
    def zero(cls, d, ring=QQ):
        return cls((), d, ring)

    @classmethod
    def constant(cls, c, d, ring=QQ):
        return cls({(0,) * d: c}, d, ring)

    @classmethod
    def monomial(cls, exponent, coeff=1, ring=QQ):
        exponent = tuple(exponent)
        return cls({exponent: coeff}, len(exponent), ring)

    @classmethod
    def variable(cls, i, d, ring=QQ):
        e = [0] * d
        e[i] = 1
        return cls({tuple(e): 1}, d, ring)

    @property
    def terms(self):
        return self._terms

    def as_dict(self):
        return dict(self._terms)

    def support(self):
        return [e for e, _ in self._terms]

    def coefficient(self, exponent):
        for e, c in self._terms:
            if e == tuple(exponent):
                return c
        return self.ring.zero()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def total_degree(self):
        return max((sum(e) for e, _ in self._terms), default=-1)

    def degree_in(self, i):
        return max((e[i] for e, _ in self._terms), default=-1)

    def degrees(self):
        return tuple(max((e[i] for e, _ in self._terms), default=0) for i in range(self.d))

    def _check(self, other):
        if not isinstance(other, Polynomial):
            return self._lift(other)
        if other.ring != self.ring:
            raise MixedRings(f"cannot combine polynomials over {self.ring!r} and {other.ring!r}")
        if other.d != self.d:
            raise DimensionMismatch(f"dimensions {self.d} and {other.d} differ")
        return other

    def _lift(self, c):
        if isinstance(c, (int, Fraction, DualNumber)) and not isinstance(c, bool):
            return Polynomial.constant(c, self.d, self.ring)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        acc = dict(self._terms)
        for e, c in other._terms:
            acc[e] = acc[e] + c if e in acc else c
        return Polynomial._from_clean(acc, self.d, self.ring)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._from_clean({e: -c for e, c in self._terms}, self.d, self.ring)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            if isinstance(other, (int, Fraction, DualNumber)) and not isinstance(other, bool):
                return self.scale(other)
            return NotImplemented
        other = self._check(other)
        acc = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                acc[e] = acc[e] + c if e in acc else c
        return Polynomial._from_clean(acc, self.d, self.ring)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.d, self.ring)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c):
        c = self.ring.coerce(c)
        return Polynomial._from_clean({e: c * v for e, v in self._terms}, self.d, self.ring)

    def shift(self, exponent):
        """Multiply by the monomial x^exponent."""
        return Polynomial._from_clean(
            {tuple(a + b for a, b in zip(e, exponent)): c for e, c in self._terms}, self.d, self.ring
        )

    def substitute_zero(self, i):
        """Set variable ``i`` to zero (the variable is kept, with exponent 0 everywhere)."""
        return Polynomial._from_clean({e: c for e, c in self._terms if e[i] == 0}, self.d, self.ring)

    def substitute(self, i, value):
        """Set variable ``i`` to a scalar value."""
        value = self.ring.coerce(value)
        acc = {}
        for e, c in self._terms:
            ne = e[:i] + (0,) + e[i + 1:]
            v = c * value ** e[i] if e[i] else c
            acc[ne] = acc[ne] + v if ne in acc else v
        return Polynomial._from_clean(acc, self.d, self.ring)

    def drop_variable(self, i):
        """Remove variable ``i``; every term must have exponent 0 there."""
        acc = {}
        for e, c in self._terms:
            if e[i]:
                raise ValueError(f"variable {i} still occurs")
            acc[e[:i] + e[i + 1:]] = c
        return Polynomial._from_clean(acc, self.d - 1, self.ring)

    def embed(self, positions, d):
        """Place the variables into a ``d``-variable ring at the given positions."""
        acc = {}
        for e, c in self._terms:
            ne = [0] * d
            for k, p in enumerate(positions):
                ne[p] = e[k]
            acc[tuple(ne)] = c
        return Polynomial._from_clean(acc, d, self.ring)

    def map_coefficients(self, fn, ring):
        acc = {}
        for e, c in self._terms:
            v = ring.coerce(fn(c))
            acc[e] = v
        return Polynomial._from_clean(acc, self.d, ring)

    def evaluate(self, point):
        total = self.ring.zero()
        for e, c in self._terms:
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * x**k
            total = total + v
        return total

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.d == other.d and self.ring == other.ring and self._terms == other._terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if other == 0:
                return not self._terms
            return self._terms == (((0,) * self.d, self.ring.coerce(other)),)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.d, self.ring, self._terms))
        return self._hash

    def __repr__(self):
        return f"Polynomial({str(self)!r}, d={self.d})"

    def __str__(self):
        return format_polynomial(self)

    def to_str(self, names=None):
        return format_polynomial(self, names)


class ParamPolynomial(Polynomial):
    """Polynomial in ``t, x1..xd``: variable 0 is the torus parameter."""

    __slots__ = ()

    @property
    def xdim(self):
        return self.d - 1

    def fiber_at_zero(self):
        """Substitute t = 0 and drop t."""
        return Polynomial(
            {e[1:]: c for e, c in self.terms if e[0] == 0}, self.d - 1, self.ring
        )

    def fiber_at_one(self):
        acc = {}
        for e, c in self.terms:
            acc[e[1:]] = acc[e[1:]] + c if e[1:] in acc else c
        return Polynomial(acc, self.d - 1, self.ring)

    def __str__(self):
        return format_polynomial(self, ["t"] + [f"x{i + 1}" for i in range(self.d - 1)])


def weight(exponent, xi):
    return sum(a * w for a, w in zip(exponent, xi))


def torus_act(f, xi):
    """Apply the one-parameter torus of weight ``xi`` to ``f``.

    Returns ``(p, M)`` where ``p = t^M * sum_e t^(-xi.e) c_e x^e`` is a
    :class:`ParamPolynomial` (t is variable 0) and ``M`` is the least shift
    making every t-exponent nonnegative, i.e. ``M = max_e xi.e``.
    """
    xi = tuple(xi)
    if len(xi) != f.d:
        raise DimensionMismatch(f"weight of length {len(xi)} for {f.d} variables")
    if f.is_zero():
        return ParamPolynomial((), f.d + 1, f.ring), 0
    M = max(weight(e, xi) for e, _ in f.terms)
    acc = {(M - weight(e, xi),) + e: c for e, c in f.terms}
    return ParamPolynomial(acc, f.d + 1, f.ring), M


def _format_coeff(c):
    if isinstance(c, DualNumber):
        s = str(c)
        nonzero = sum(1 for v in c.coefficients if v)
        return f"({s})" if nonzero > 1 else s
    return str(c)


def _format_monomial(e, names):
    parts = []
    for k, name in zip(e, names):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_polynomial(p, names=None):
    if names is None:
        names = [f"x{i + 1}" for i in range(p.d)]
    if p.is_zero():
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.terms):
        mono = _format_monomial(e, names)
        neg = False
        if isinstance(c, DualNumber):
            nonzero = [v for v in c.coefficients if v]
            if len(nonzero) == 1 and nonzero[0] < 0:
                neg, c = True, -c
        elif c < 0:
            neg, c = True, -c
        cs = _format_coeff(c)
        if not mono:
            body = cs
        elif c == 1:
            body = mono
        else:
            body = f"{cs}*{mono}"
        if idx == 0:
            out.append("-" + body if neg else body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<var>x(?P<idx>\d+))|(?P<eps>eps)|(?P<t>t)|(?P<op>[-+*/^()]))"
)


class _Parser:
    def __init__(self, text, d, ring, line, col_offset, allow_t):
        self.text = text
        self.d = d
        self.ring = ring
        self.line = line
        self.col_offset = col_offset
        self.allow_t = allow_t
        self.tokens = self._tokenize()
        self.pos = 0

    def error(self, msg, col):
        raise ParseError(msg, self.line, col + self.col_offset + 1)

    def _tokenize(self):
        tokens = []
        i = 0
        text = self.text
        while i < len(text):
            if text[i].isspace():
                i += 1
                continue
            m = _TOKEN.match(text, i)
            if not m or m.end() == i:
                self.error(f"unexpected character {text[i]!r}", i)
            start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
            if m.group("num"):
                tokens.append(("num", int(m.group("num")), start))
            elif m.group("var"):
                idx = int(m.group("idx"))
                if not 1 <= idx <= self.d:
                    self.error(f"variable x{idx} outside x1..x{self.d}", start)
                tokens.append(("var", idx - 1, start))
            elif m.group("eps"):
                if not isinstance(self.ring, DualRing):
                    self.error("'eps' is only allowed over a dual-number base", start)
                tokens.append(("eps", None, start))
            elif m.group("t"):
                if not self.allow_t:
                    self.error("unexpected 't'", start)
                tokens.append(("t", None, start))
            else:
                tokens.append(("op", m.group("op"), start))
            i = m.end()
        tokens.append(("end", None, len(text)))
        return tokens

    def peek(self):
        return self.tokens[self.pos]

    def take(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def nvars(self):
        return self.d + (1 if self.allow_t else 0)

    def const(self, c):
        return Polynomial.constant(c, self.nvars(), self.ring)

    def parse(self):
        if self.peek()[0] == "end":
            self.error("empty polynomial", 0)
        p = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            self.error(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self):
        sign = 1
        tok = self.peek()
        if tok == ("op", "-", tok[2]) or tok == ("op", "+", tok[2]):
            self.take()
            sign = -1 if tok[1] == "-" else 1
        p = self.term()
        if sign < 0:
            p = -p
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                q = self.term()
                p = p + q if tok[1] == "+" else p - q
            else:
                return p

    def term(self):
        p = self.power()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                p = p * self.power()
            elif tok[0] in ("num", "var", "eps", "t") or tok == ("op", "(", tok[2]):
                p = p * self.power()
            else:
                return p

    def power(self):
        p = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a nonnegative integer", e[2])
            p = p ** e[1]
        return p

    def atom(self):
        tok = self.take()
        kind, val, col = tok
        n = self.nvars()
        shift = 1 if self.allow_t else 0
        if kind == "num":
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "num":
                    self.error("denominator must be an integer", den[2])
                if den[1] == 0:
                    self.error("zero denominator", den[2])
                return self.const(Fraction(val, den[1]))
            return self.const(val)
        if kind == "var":
            return Polynomial.variable(val + shift, n, self.ring)
        if kind == "t":
            return Polynomial.variable(0, n, self.ring)
        if kind == "eps":
            return self.const(self.ring.eps())
        if kind == "op" and val == "(":
            p = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close[2])
            return p
        if kind == "end":
            self.error("unexpected end of input", col)
        self.error(f"unexpected {val!r}", col)


def parse_polynomial(text, d, ring=QQ, line=None, col_offset=0):
    """Parse text such as ``x1^2*x2 - 3/4*x2^3 + 1`` into a :class:`Polynomial`.

    ``*`` may be omitted; parentheses are allowed; ``eps`` is only legal over
    a dual-number ring.  Errors carry the 1-based line and column.
    """
    return _Parser(text, d, ring, line, col_offset, allow_t=False).parse()


def parse_param_polynomial(text, d, ring=QQ):
    p = _Parser(text, d, ring, None, 0, allow_t=True).parse()
    return ParamPolynomial(p.terms, d + 1, ring)
