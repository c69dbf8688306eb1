"""Chow points, triangularity of multiplication and linearized determinants."""

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .bbcell import bb_membership, division, initial_staircase
from .errors import LengthMismatch
from .gb import EngineArtifacts
from .order import QHOrder, SignedOrder
from .poly import Polynomial


@dataclass
class ChowPoint:
    """Characteristic polynomial of multiplication by x_i on the quotient."""

    variable: int
    coefficients: list  # [1, c1, ..., cn] of det(lambda - M_i)

    @property
    def n(self):
        return len(self.coefficients) - 1

    @property
    def is_origin(self):
        """True when the polynomial is lambda^n, i.e. x_i is nilpotent."""
        return not any(self.coefficients[1:])

    def polynomial(self):
        n = self.n
        return Polynomial({(n - k,): c for k, c in enumerate(self.coefficients)}, 1)

    def __str__(self):
        return self.polynomial().to_str(["lambda"])


def chow_point(artifacts, i):
    return ChowPoint(i, linalg.charpoly(artifacts.mult_matrices[i]))


def chow_points(ideal):
    art = ideal.artifacts
    return [chow_point(art, i) for i in range(ideal.d)]


# ------------------------------------------------------------ triangularity


@dataclass
class TriangularityResult:
    holds: bool
    variable: int
    basis: list  # Delta monomials, decreasing in the order
    matrix: list  # column j = coordinates of R_Delta(x_i * b_j)
    order: QHOrder


def negative_order(weight, i):
    """Total order of weight ``weight`` in which x_i is a negative variable."""
    d = len(weight)
    polarity = 1 if weight[i] < 0 else -1
    return QHOrder(weight, SignedOrder.standard(d), polarity)


def triangularity_check(ideal, order, delta, i):
    """Whether x_i acts strictly lower triangularly on the ordered Delta basis.

    ``order`` must make x_i negative and I Delta-monic; the matrix of
    ``x_i`` in the basis ``b_1 > b_2 > ...`` is computed from the Delta part
    of the division remainder.
    """
    if order.effective_sign(i) > 0:
        raise ValueError(f"x{i + 1} is not a negative variable of {order}")
    res = initial_staircase(ideal, order)
    if res.staircase != delta:
        raise ValueError("the ideal is not Delta-monic for this order")
    basis = order.sorted(delta, reverse=True)
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    mat = linalg.zeros(n, n)
    unit = tuple(1 if k == i else 0 for k in range(ideal.d))
    for j, b in enumerate(basis):
        f = Polynomial.monomial(tuple(x + y for x, y in zip(b, unit)))
        rd = division(f, res).remainder_delta
        for e, c in rd.terms:
            mat[pos[e]][j] = c
    holds = all(not mat[r][c] for r in range(n) for c in range(n) if r <= c)
    return TriangularityResult(holds, i, basis, mat, order)


def delta_matrices(ideal, order, delta):
    """Multiplication matrices of every variable in the Delta basis (decreasing order)."""
    res = initial_staircase(ideal, order)
    if res.staircase != delta:
        raise ValueError("the ideal is not Delta-monic for this order")
    basis = order.sorted(delta, reverse=True)
    pos = {b: k for k, b in enumerate(basis)}
    n = len(basis)
    mats = []
    for i in range(ideal.d):
        mat = linalg.zeros(n, n)
        for j, b in enumerate(basis):
            e = list(b)
            e[i] += 1
            for m, c in division(Polynomial.monomial(tuple(e)), res).remainder_delta.terms:
                mat[pos[m]][j] = c
        mats.append(mat)
    return basis, mats


# ---------------------------------------------------- linearized determinant


def _coeffs(p, i):
    """Coefficients of a polynomial in the single variable x_i (or univariate)."""
    out = {}
    for e, c in p.terms:
        if any(v for k, v in enumerate(e) if k != i and p.d > 1):
            raise ValueError(f"{p} involves variables other than x{i + 1}")
        k = e[i] if p.d > 1 else e[0]
        out[k] = c
    return out


def _eval_matrix(p, i, m):
    n = len(m)
    out = linalg.zeros(n, n)
    power = linalg.identity(n)
    coeffs = _coeffs(p, i)
    for k in range(max(coeffs, default=-1) + 1):
        c = coeffs.get(k)
        if c:
            for r in range(n):
                for s in range(n):
                    if power[r][s]:
                        out[r][s] += c * power[r][s]
        power = linalg.matmul(m, power)
    return out


def linearized_determinant(tensor, matrix, i=0):
    """ld of a tensor sum c * P_1 (x) ... (x) P_n.

    ``tensor`` is a list of ``(coefficient, [P_1, ..., P_n])``; each P_j is a
    polynomial in x_i.  A pure tensor contributes the determinant whose j-th
    column is the j-th column of P_j(M).  ``matrix`` is either M itself or
    engine artifacts, whose i-th multiplication matrix (grevlex basis) is used.
    """
    if isinstance(matrix, EngineArtifacts):
        matrix = matrix.mult_matrices[i]
    n = len(matrix)
    cache = {}
    total = Fraction(0)
    for coeff, factors in tensor:
        if len(factors) != n:
            raise LengthMismatch(f"tensor has {len(factors)} factors but the quotient has rank {n}")
        cols = []
        for j, p in enumerate(factors):
            if p not in cache:
                cache[p] = _eval_matrix(p, i, matrix)
            cols.append([row[j] for row in cache[p]])
        total += coeff * linalg.det(linalg.transpose(cols))
    return total


def _distinct_orderings(items):
    counts = {}
    for p in items:
        counts[p] = counts.get(p, 0) + 1
    keys = list(counts)

    def rec(prefix, left):
        if not left:
            yield list(prefix)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                prefix.append(k)
                yield from rec(prefix, left - 1)
                prefix.pop()
                counts[k] += 1

    yield from rec([], len(items))


def symmetrize(factors):
    """Sum over all orderings of a pure tensor, as a tensor list.

    Orderings that coincide are merged, each weighted by its multiplicity.
    """
    mult = 1
    counts = {}
    for p in factors:
        counts[p] = counts.get(p, 0) + 1
    for c in counts.values():
        mult *= math.factorial(c)
    return [(Fraction(mult), p) for p in _distinct_orderings(list(factors))]


def elementary_tensor(n, k, x, one):
    """sigma_k: sum of x^{(x) S} (x) 1^{(x) rest} over k-subsets S of the n slots."""
    out = []
    for S in itertools.combinations(range(n), k):
        out.append((Fraction(1), [x if j in S else one for j in range(n)]))
    return out


def tensor_product(s, t):
    """Slotwise product of two tensors."""
    return [(a * b, [p * q for p, q in zip(fs, gs)]) for a, fs in s for b, gs in t]


def charpoly_from_ld(matrix, d, i):
    """[1, c1, ..., cn] recovered from ld(sigma_k) = e_k."""
    n = len(matrix)
    x = Polynomial.variable(i, d)
    one = Polynomial.constant(1, d)
    out = [Fraction(1)]
    for k in range(1, n + 1):
        out.append((-1) ** k * linearized_determinant(elementary_tensor(n, k, x, one), matrix, i))
    return out


# ------------------------------------------------------------- fiber check


@dataclass
class FiberCheckResult:
    holds: bool
    applicable: bool
    variables: list
    details: dict


def fiber_check(ideal, weight, delta):
    """Chow-point check for a BB-cell member: every x_i with weight <= 0 has
    characteristic polynomial lambda^n, and ld vanishes on symmetric tensors
    with a factor divisible by x_i."""
    bb = bb_membership(ideal, weight, delta)
    if not bb.holds:
        return FiberCheckResult(False, False, [], {"reason": bb.diagnosis})
    art = ideal.artifacts
    d = ideal.d
    n = art.n
    details = {}
    ok = True
    vars_ = [i for i, w in enumerate(bb.weight) if w <= 0]
    for i in vars_:
        cp = chow_point(art, i)
        x = Polynomial.variable(i, d)
        one = Polynomial.constant(1, d)
        m = art.mult_matrices[i]
        tri = triangularity_check(ideal, negative_order(bb.weight, i), delta, i)
        vals = []
        for k in range(1, n + 1):
            vals.append(linearized_determinant(elementary_tensor(n, k, x, one), m, i))
        for q in (one, one + x, x * x + one):
            vals.append(linearized_determinant(symmetrize([x * q] + [one + x] * (n - 1)), m, i))
        good = cp.is_origin and tri.holds and not any(vals)
        ok = ok and good
        details[i] = {"charpoly": str(cp), "triangular": tri.holds, "ld_values": [str(v) for v in vals]}
    return FiberCheckResult(ok, True, vars_, details)


__all__ = [
    "ChowPoint",
    "FiberCheckResult",
    "TriangularityResult",
    "charpoly_from_ld",
    "chow_point",
    "chow_points",
    "delta_matrices",
    "elementary_tensor",
    "fiber_check",
    "linearized_determinant",
    "negative_order",
    "symmetrize",
    "tensor_product",
]
