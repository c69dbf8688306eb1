"""Random zero-dimensional ideals with known colength.

Each ideal is the intersection of local pieces.  A piece is a point p, a
local staircase D_p and an invertible triangular coordinate change
x = p + phi(y); its ideal is {f : f(p + phi(y)) in I^{D_p}}.  The ideal is
computed from the functionals "coefficient of y^a in f(p + phi(y))" by
Buchberger-Moeller style linear algebra, then its generators are scrambled
so the input is not already a Groebner basis.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .gb import Ideal, grevlex_key
from .poly import Polynomial
from .staircase import enumerate_standard_sets


_COORDS = (-2, -1, 0, 0, 1, 2, Fraction(1, 2), Fraction(-1, 3), Fraction(3, 2))


@dataclass
class Piece:
    point: tuple
    staircase: object
    change: list  # phi_i as polynomials in y


@dataclass
class Sample:
    ideal: Ideal
    weight: tuple
    pieces: list = field(default_factory=list)

    @property
    def n(self):
        return sum(p.staircase.n for p in self.pieces)


def _truncate(p, bound):
    """Keep the terms x^e with every e_i < bound[i]."""
    return Polynomial({e: c for e, c in p.terms if all(a < b for a, b in zip(e, bound))}, p.d)


def _functional_values(mono, piece, cache):
    """Values of the piece's functionals on x^mono, as a list over its staircase."""
    d = len(mono)
    bound = tuple(max(e[i] for e in piece.staircase) + 1 for i in range(d))
    key = (id(piece), mono)
    if key not in cache:
        acc = Polynomial.constant(1, d)
        for i, k in enumerate(mono):
            base = piece.change[i] + piece.point[i]
            for _ in range(k):
                acc = _truncate(acc * base, bound)
        cache[key] = acc
    acc = cache[key]
    return [acc.coefficient(a) for a in piece.staircase]


def ideal_of_pieces(pieces, d):
    """Reduced grevlex basis (as polynomials) of the intersection of the pieces."""
    n = sum(p.staircase.n for p in pieces)
    cache = {}
    eb = linalg.EchelonBasis(n)
    leads = []
    gens = []
    deg = 0
    while True:
        layer = [e for e in _monomials_of_degree(d, deg) if not any(all(a >= b for a, b in zip(e, l)) for l in leads)]
        if not layer:
            break
        for e in sorted(layer, key=grevlex_key):
            vec = []
            for p in pieces:
                vec.extend(_functional_values(e, p, cache))
            comb = eb.add(vec, e)
            if comb is not None:
                terms = {e: Fraction(1)}
                for s, c in comb.items():
                    terms[s] = terms.get(s, 0) - c
                gens.append(Polynomial(terms, d))
                leads.append(e)
        deg += 1
    return gens


def _monomials_of_degree(d, k):
    if d == 1:
        return [(k,)]
    out = []
    for a in range(k, -1, -1):
        for rest in _monomials_of_degree(d - 1, k - a):
            out.append((a,) + rest)
    return out


def _random_change(rng, d, nonlinear):
    """Triangular automorphism y -> phi(y) with phi_i = y_i + (terms in y_1..y_{i-1})."""
    change = []
    for i in range(d):
        p = Polynomial.variable(i, d)
        for j in range(i):
            c = rng.randint(-2, 2)
            if c:
                p = p + Polynomial.variable(j, d).scale(c)
            if nonlinear and rng.random() < 0.3:
                p = p + (Polynomial.variable(j, d) ** 2).scale(rng.choice([-1, 1]))
        change.append(p)
    return change


def _staircases(d, n):
    return list(enumerate_standard_sets(d, n))


def random_sample(rng, d, max_n=4, weight=None, attract=None, max_points=3):
    """One random ideal in ``d`` variables of colength at most ``max_n``.

    With ``attract`` true every coordinate of non-positive weight is set to
    zero at each point, the situation in which torus limits tend to keep
    full rank.
    """
    if weight is None:
        weight = tuple(rng.choice([-2, -1, 0, 1, 1, 2]) for _ in range(d))
        if not any(weight):
            weight = (1,) + weight[1:]
    if attract is None:
        attract = rng.random() < 0.5
    total = rng.randint(1, max_n)
    if attract and all(w <= 0 for w in weight):
        max_points = 1  # every point is forced to the origin
    k = rng.randint(1, min(max_points, total))
    sizes = [1] * k
    for _ in range(total - k):
        sizes[rng.randrange(k)] += 1
    pieces = []
    points = set()
    for size in sizes:
        while True:
            pt = tuple(
                0 if attract and weight[i] <= 0 else rng.choice(_COORDS)
                for i in range(d)
            )
            if pt not in points:
                break
        points.add(pt)
        stair = rng.choice(_staircases(d, size))
        pieces.append(Piece(pt, stair, _random_change(rng, d, rng.random() < 0.3)))
    gb = ideal_of_pieces(pieces, d)
    gens = scramble(rng, gb)
    return Sample(Ideal(gens, d), tuple(weight), pieces)


def scramble(rng, gb):
    """Unitriangular random combinations of a basis, then random rescaling.

    Adding multiples of earlier elements only keeps the change of generators
    invertible, so the ideal is unchanged.
    """
    d = gb[0].d
    out = []
    for i, g in enumerate(gb):
        h = g
        for other in gb[:i]:
            if rng.random() < 0.4:
                e = tuple(rng.randint(0, 1) for _ in range(d))
                h = h + other.shift(e).scale(rng.randint(-2, 2))
        out.append(h if rng.random() < 0.7 else h.scale(rng.choice([2, -3, Fraction(1, 2)])))
    rng.shuffle(out)
    return out


def corpus(seed, count, dims=(1, 2, 3), max_n=6):
    """A reproducible list of samples."""
    rng = random.Random(seed)
    return [random_sample(rng, rng.choice(dims), max_n) for _ in range(count)]
