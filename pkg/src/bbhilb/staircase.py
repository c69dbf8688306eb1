"""Standard sets (staircases), their outer corners and heights."""

import ast
import itertools

from .errors import DimensionMismatch, NotDownwardClosed, ParseError


class StandardSet:
    """A finite downward-closed subset of N^d, stored extensionally."""

    __slots__ = ("d", "elements", "_set")

    def __init__(self, elements, d=None):
        elems = sorted({tuple(int(v) for v in e) for e in elements})
        if d is None:
            if not elems:
                raise ValueError("dimension of the empty staircase must be given")
            d = len(elems[0])
        for e in elems:
            if len(e) != d:
                raise DimensionMismatch(f"exponent {e} does not have length {d}")
            if any(v < 0 for v in e):
                raise ValueError(f"negative exponent {e}")
        self.d = d
        self.elements = tuple(elems)
        self._set = frozenset(elems)

    @property
    def n(self):
        return len(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, e):
        return tuple(e) in self._set

    def __eq__(self, other):
        return isinstance(other, StandardSet) and self.d == other.d and self._set == other._set

    def __hash__(self):
        return hash((self.d, self._set))

    def __repr__(self):
        return f"StandardSet({list(self.elements)})"

    def __str__(self):
        return format_exponents(self.elements)

    def to_json(self):
        return [list(e) for e in self.elements]

    def outer_corners(self):
        return outer_corners(self)

    def monomial_ideal(self):
        """Generators of I^Delta (the outer-corner monomials)."""
        from .poly import Polynomial

        return [Polynomial.monomial(c) for c in self.outer_corners()]


def _missing_predecessor(elements):
    s = set(elements)
    for e in sorted(s):
        for i in reversed(range(len(e))):
            if e[i] > 0:
                f = e[:i] + (e[i] - 1,) + e[i + 1:]
                if f not in s:
                    return e, f
    return None


def validate_standard_set(elements, d=None):
    """Return a :class:`StandardSet` or raise :class:`NotDownwardClosed` with a witness."""
    elems = [tuple(int(v) for v in e) for e in elements]
    bad = _missing_predecessor(elems)
    if bad is not None:
        raise NotDownwardClosed(*bad)
    return StandardSet(elems, d)


def outer_corners(delta):
    """Minimal exponents outside ``delta``, sorted."""
    d = delta.d
    if delta.n == 0:
        return [(0,) * d]
    # every corner is e + unit vector for some e in delta (or a unit vector itself)
    candidates = set()
    for e in delta:
        for i in range(d):
            c = e[:i] + (e[i] + 1,) + e[i + 1:]
            if c not in delta:
                candidates.add(c)
    corners = []
    for c in candidates:
        minimal = True
        for i in range(d):
            if c[i] > 0:
                below = c[:i] + (c[i] - 1,) + c[i + 1:]
                if below not in delta:
                    minimal = False
                    break
        if minimal:
            corners.append(c)
    return sorted(corners)


def in_complement_of(corners, e):
    return any(all(a >= b for a, b in zip(e, c)) for c in corners)


def heights(delta, i):
    """Heights along the distinguished variable ``i``.

    Returns a dict mapping each projected exponent ``m`` (the exponent with
    coordinate ``i`` set to 0) to ``h(m)``, the unique h with ``x_i^(h-1) m`` in
    ``delta`` and ``x_i^h m`` not in it.  Only projections of elements of
    ``delta`` appear; all other monomials have height 0.
    """
    h = {}
    for e in delta:
        m = e[:i] + (0,) + e[i + 1:]
        h[m] = max(h.get(m, 0), e[i] + 1)
    return dict(sorted(h.items()))


def height(delta, i, m):
    m = tuple(m)
    if m[i] != 0:
        raise ValueError("m must not involve the distinguished variable")
    k = 0
    while m[:i] + (k,) + m[i + 1:] in delta:
        k += 1
    return k


def cumulative_heights(delta, i, negative, order_key):
    """The cumulative heights H(m) = sum of h(m_j) over m_j^+ <= m^+.

    ``negative`` lists the negative variables other than ``i``; ``order_key``
    sorts exponents increasingly in the total order.  Keys of the result are
    the monomials in the negative variables (coordinate ``i`` zero) whose
    projection lies in ``delta``.
    """
    hs = heights(delta, i)
    neg = [j for j in negative if j != i]
    block = {}
    for m, hv in hs.items():
        if all(m[j] == 0 for j in range(delta.d) if j != i and j not in neg):
            block[m] = hv

    def plus(m):
        return m[:i] + (block[m],) + m[i + 1:]

    ordered = sorted(block, key=lambda m: order_key(plus(m)))
    out = {}
    running = 0
    for m in ordered:
        running += block[m]
        out[m] = running
    return out


def _grow_staircases(d, n):
    results = []

    def addable(cells, cell_set):
        out = set()
        for e in cells:
            for i in range(d):
                c = e[:i] + (e[i] + 1,) + e[i + 1:]
                if c not in cell_set and all(
                    c[:j] + (c[j] - 1,) + c[j + 1:] in cell_set for j in range(d) if c[j] > 0
                ):
                    out.add(c)
        return out

    origin = (0,) * d

    def grow(cells, cell_set, last):
        if len(cells) == n:
            results.append(StandardSet(cells, d))
            return
        for c in sorted(addable(cells, cell_set)):
            if c > last:
                cell_set.add(c)
                cells.append(c)
                grow(cells, cell_set, c)
                cells.pop()
                cell_set.remove(c)

    if n == 0:
        return [StandardSet([], d)]
    grow([origin], {origin}, origin)
    return results


def enumerate_standard_sets(d, n):
    """Yield every staircase of cardinality ``n`` in N^d exactly once.

    Staircases are built by adding cells in increasing lexicographic order; a
    set is reached only along its sorted sequence of cells, since any prefix
    of the lexicographically sorted elements of a staircase is itself downward
    closed.
    """
    if d < 1:
        raise ValueError("dimension must be positive")
    yield from _grow_staircases(d, n)


def box(bounds):
    """All exponents e with 0 <= e_i < bounds[i]."""
    return list(itertools.product(*(range(b) for b in bounds)))


def format_exponents(exps):
    return "{" + ",".join("(" + ",".join(str(v) for v in e) + ")" for e in sorted(exps)) + "}"


def parse_standard_set(text, d=None):
    """Parse ``{(0,0),(0,1)}`` or ``[[0,0],[0,1]]`` into a validated staircase."""
    s = text.strip()
    if s.startswith("{") and s.endswith("}"):
        s = "[" + s[1:-1] + "]"
    try:
        value = ast.literal_eval(s)
    except (ValueError, SyntaxError) as exc:
        raise ParseError(f"cannot parse staircase {text!r}: {exc}") from None
    if isinstance(value, (int, tuple)) and not isinstance(value, list):
        value = [value] if isinstance(value, int) else list(value)
    elems = []
    for item in value:
        if isinstance(item, int):
            item = (item,)
        if not isinstance(item, (list, tuple)) or not all(isinstance(v, int) for v in item):
            raise ParseError(f"bad staircase element {item!r}")
        elems.append(tuple(item))
    if not elems:
        raise ParseError("empty staircase")
    if d is not None and any(len(e) != d for e in elems):
        raise ParseError(f"staircase elements must have length {d}")
    return validate_standard_set(elems, d)
