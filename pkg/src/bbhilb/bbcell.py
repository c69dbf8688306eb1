"""Boundedness, Delta-monic tests, initial staircases for non-global
quasi-homogeneous orders, division with a split remainder, flat limits and
Bialynicki-Birula membership.

Non-global orders are handled by linear algebra in a finite exponent box:
once every negative variable is nilpotent modulo I, every computation can be
confined to ``prod [0, max(r_i, n+1))``, where the order restricted to
finitely many monomials is an ordinary total order.
"""

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .coeff import QQ, CoeffIdeal, DualRing, UNIT_IDEAL, ZERO_IDEAL
from .errors import (
    BoundNotVerified,
    InternalBoxOverflow,
    InvariantViolation,
    IterationLimit,
    MixedRings,
    NotBounded,
    NotDownwardClosed,
    NotZeroDimensional,
)
from .gb import Ideal, degeneration_oracle, min_poly
from .order import QHOrder, canonical_pair, initial_form
from .poly import Polynomial
from .staircase import StandardSet, box, outer_corners, validate_standard_set


# ---------------------------------------------------------------- boundedness


@dataclass
class BoundednessCertificate:
    order: QHOrder
    exponents: tuple  # r_i per variable
    witnesses: tuple  # h_i in I intersected with Q[x_i]
    polarity: tuple

    def pure_powers(self):
        """x_i^{r_i} for the negative variables."""
        d = len(self.exponents)
        out = {}
        for i, s in enumerate(self.polarity):
            if s < 0:
                e = [0] * d
                e[i] = self.exponents[i]
                out[i] = Polynomial.monomial(tuple(e))
        return out


def _is_pure_power(p, i):
    return len(p) == 1 and p.terms[0][1] == 1


def check_boundedness(ideal, order):
    """Certificate data plus the list of (variable, min_poly) that violate boundedness."""
    art = ideal.artifacts
    pol = order.variable_polarity()
    witnesses, exps, failures = [], [], []
    for i in range(ideal.d):
        h = min_poly(art, i)
        witnesses.append(h)
        exps.append(h.degree_in(i))
        if pol[i] < 0 and not _is_pure_power(h, i):
            failures.append((i, h))
    return BoundednessCertificate(order, tuple(exps), tuple(witnesses), pol), failures


def boundedness(ideal, order):
    """Boundedness certificate for a total order, or :class:`NotBounded`.

    A negative variable must be nilpotent on the quotient (its minimal
    polynomial is a pure power); a positive variable is always bounded by
    its minimal polynomial, whose leading term is the top power.
    """
    cert, failures = check_boundedness(ideal, order)
    if failures:
        i, h = failures[0]
        raise NotBounded(i, h)
    return cert


# ------------------------------------------------------- initial staircase


@dataclass
class InitialStaircaseResult:
    """Staircase of in(I) with the reduced basis at its outer corners.

    ``corners`` and ``reduced_basis`` are aligned and listed decreasing in
    the order; each g_j has single-term initial x^{corners[j]} and its tail
    supported in the staircase.
    """

    order: QHOrder
    staircase: StandardSet
    corners: list
    reduced_basis: list
    certificate: BoundednessCertificate
    box_bounds: tuple
    standard: list = field(default_factory=list)  # standard monomials in increasing order

    def element(self, corner):
        return self.reduced_basis[self.corners.index(tuple(corner))]


def _box_vectors(art, bounds):
    """Normal-form vectors of every box monomial, built by multiplying up from 1."""
    vecs = {}
    for e in box(bounds):
        if art.n == 0:
            vecs[e] = []
            continue
        if not any(e):
            v = [Fraction(0)] * art.n
            v[art.index[e]] = Fraction(1)
            vecs[e] = v
            continue
        i = next(k for k, v in enumerate(e) if v)
        prev = e[:i] + (e[i] - 1,) + e[i + 1:]
        vecs[e] = linalg.matvec(art.mult_matrices[i], vecs[prev])
    return vecs


def initial_staircase(ideal, order):
    """Staircase of in(I) and a reduced basis for a total quasi-homogeneous order."""
    cache_key = ("initial", order)
    if cache_key in ideal.cache:
        return ideal.cache[cache_key]
    art = ideal.artifacts
    cert = boundedness(ideal, order)
    n = art.n
    bounds = tuple(max(r, n + 1) for r in cert.exponents)
    vecs = _box_vectors(art, bounds)
    monos = order.sorted(vecs)
    eb = linalg.EchelonBasis(n)
    standard = []
    relations = {}
    for m in monos:
        comb = eb.add(vecs[m], m)
        if comb is None:
            standard.append(m)
        else:
            relations[m] = comb
    if len(standard) != n:
        raise InternalBoxOverflow(f"found {len(standard)} standard monomials in the box, expected {n}")
    try:
        stair = validate_standard_set(standard, ideal.d)
    except NotDownwardClosed as exc:
        raise InvariantViolation(f"standard monomials are not a staircase: {exc}") from None
    corners = order.sorted(outer_corners(stair), reverse=True)
    reduced = []
    for c in corners:
        if c not in relations:
            raise InternalBoxOverflow(f"corner {c} lies outside the box {bounds}")
        terms = {c: Fraction(1)}
        for s, coef in relations[c].items():
            terms[s] = terms.get(s, 0) - coef
        reduced.append(Polynomial(terms, ideal.d))
    result = InitialStaircaseResult(order, stair, corners, reduced, cert, bounds, standard)
    ideal.cache[cache_key] = result
    return result


# ------------------------------------------------------------ Delta-monic


@dataclass
class Failure:
    clause: str
    message: str
    detail: dict = field(default_factory=dict)


@dataclass
class MonicResult:
    holds: bool
    order: QHOrder
    delta: StandardSet
    rank: object
    failures: list
    staircase: object = None
    certificate: object = None

    def __bool__(self):
        return self.holds

    @property
    def diagnosis(self):
        return "; ".join(f.message for f in self.failures)


def _rank_failure(ideal, delta):
    try:
        rank = ideal.quotient_dimension()
    except NotZeroDimensional as exc:
        return None, Failure("rank", "quotient is not finite-dimensional", {"error": str(exc)})
    if rank != delta.n:
        return rank, Failure("rank", f"quotient rank {rank} ≠ {delta.n}", {"rank": rank, "expected": delta.n})
    return rank, None


def delta_monic(ideal, order, delta):
    """Whether I is bounded, of quotient rank #Delta and has initial staircase Delta.

    All clauses are evaluated; ``failures`` lists them in the order rank,
    boundedness, staircase.
    """
    failures = []
    rank, rf = _rank_failure(ideal, delta)
    if rf is not None:
        failures.append(rf)
        if rank is None:
            return MonicResult(False, order, delta, None, failures)
    cert, bad = check_boundedness(ideal, order)
    if bad:
        failures.append(
            Failure(
                "bounded",
                "not bounded",
                {"variables": [f"x{i + 1}" for i, _ in bad], "min_polys": [str(h) for _, h in bad]},
            )
        )
        return MonicResult(False, order, delta, rank, failures, certificate=cert)
    res = initial_staircase(ideal, order)
    if res.staircase != delta:
        failures.append(
            Failure(
                "staircase",
                f"initial staircase {res.staircase} ≠ {delta}",
                {"staircase": res.staircase.to_json()},
            )
        )
    return MonicResult(not failures, order, delta, rank, failures, res.staircase, cert)


# ---------------------------------------------------------------- division


@dataclass
class DivisionResult:
    f: Polynomial
    divisors: list
    quotients: list
    remainder_delta: Polynomial
    remainder_rest: Polynomial
    iterations: int
    deformation: tuple

    def reassemble(self):
        total = self.remainder_delta + self.remainder_rest
        for q, g in zip(self.quotients, self.divisors):
            total = total + q * g
        return total


def deformed_weight(order, spread):
    """Rational weight xi' = xi + delta realizing ``order`` on exponents whose
    coordinate differences are at most ``spread``."""
    tb = order.tiebreak
    eps = Fraction(1, 2 * spread + 2)
    w = [Fraction(v) for v in order.weight]
    for rank, i in enumerate(tb.perm):
        w[i] += tb.signs[i] * order.polarity * eps ** (rank + 1)
    return tuple(w)


def division(f, result, delta=None, order=None, max_iter=None, use_pure_powers=True):
    """Divide ``f`` by the reduced basis of ``result``: f = sum q_j g_j + R_Delta + R'.

    Terms are ordered by a small rational deformation xi' of the weight that
    agrees with the total order on the box.  The loop stops once every term
    of R' off Delta has xi'-weight below all of Delta.  With
    ``use_pure_powers`` the pure powers of negative variables join the
    divisors, which shortens the loop without changing R_Delta.
    """
    if order is not None and order != result.order:
        raise ValueError("division order differs from the order of the staircase result")
    order = result.order
    if delta is None:
        delta = result.staircase
    if delta != result.staircase:
        raise ValueError("Delta must be the staircase of the supplied result")
    d = f.d
    divisors = list(result.reduced_basis)
    leads = list(result.corners)
    if use_pure_powers:
        for i, p in result.certificate.pure_powers().items():
            if p not in divisors:
                divisors.append(p)
                leads.append(p.terms[0][0])
    spread = max(result.box_bounds)
    w = deformed_weight(order, spread)

    def key(e):
        return (sum(a * b for a, b in zip(e, w)), order.key(e))

    floor = min(key(s) for s in delta)
    if max_iter is None:
        size = 1
        for b in result.box_bounds:
            size *= b
        max_iter = 10 * delta.n * size
    T = dict(f.terms)
    quotients = [dict() for _ in divisors]
    steps = 0
    while True:
        rest = [e for e in T if e not in delta]
        if not rest:
            break
        top = max(rest, key=key)
        if key(top) < floor:
            break
        if steps >= max_iter:
            raise IterationLimit(f"division did not finish within {max_iter} steps")
        c = T[top]
        j = next(k for k, l in enumerate(leads) if all(a <= b for a, b in zip(l, top)))
        q = tuple(a - b for a, b in zip(top, leads[j]))
        quotients[j][q] = quotients[j].get(q, 0) + c
        for e, v in divisors[j].terms:
            ne = tuple(a + b for a, b in zip(e, q))
            nv = T.get(ne, 0) - c * v
            if nv:
                T[ne] = nv
            else:
                T.pop(ne, None)
        steps += 1
    r_delta = Polynomial({e: c for e, c in T.items() if e in delta}, d)
    r_rest = Polynomial({e: c for e, c in T.items() if e not in delta}, d)
    quots = [Polynomial(q, d) for q in quotients]
    return DivisionResult(f, divisors, quots, r_delta, r_rest, steps, w)


def xn_membership_check(ideal, order, delta):
    """For each negative variable x_i, whether division certifies x_i^n in I.

    The division uses only the reduced basis (no pure powers), so the
    certificate comes from the staircase data alone.
    """
    res = initial_staircase(ideal, order)
    if res.staircase != delta:
        raise ValueError("the ideal is not Delta-monic for this order")
    n = delta.n
    out = {}
    for i in order.negative_variables():
        e = [0] * ideal.d
        e[i] = n
        div = division(Polynomial.monomial(tuple(e)), res, delta, use_pure_powers=False)
        out[i] = div.remainder_delta.is_zero()
    return out


# --------------------------------------------------------- BB membership


@dataclass
class BBResult:
    holds: bool
    weight: tuple
    delta: StandardSet
    plus: MonicResult
    minus: MonicResult
    failures: list

    def __bool__(self):
        return self.holds

    @property
    def diagnosis(self):
        return "; ".join(f.message for f in self.failures)


def _merge_failures(plus, minus):
    merged = []
    seen = {}
    for tag, res in (("plus", plus), ("minus", minus)):
        for f in res.failures:
            k = (f.clause, f.message)
            if k in seen:
                seen[k].append(tag)
            else:
                seen[k] = [tag]
                merged.append(f)
    out = []
    for f in merged:
        tags = seen[(f.clause, f.message)]
        if f.clause == "rank" or len(tags) == 2:
            out.append(f)
        else:
            out.append(Failure(f.clause, f"{f.message} ({tags[0]} order)", dict(f.detail, order=tags[0])))
    return out


def bb_membership(ideal, weight, delta):
    """Whether the torus limit of I is I^Delta: Delta-monic for both canonical orders."""
    plus, minus = canonical_pair(weight)
    rp = delta_monic(ideal, plus, delta)
    rm = delta_monic(ideal, minus, delta)
    failures = _merge_failures(rp, rm)
    return BBResult(rp.holds and rm.holds, plus.weight, delta, rp, rm, failures)


def oracle_bb(ideal, weight, delta):
    """Membership decided by the saturation oracle: I(0) = I^Delta and generic rank #Delta."""
    return degeneration_oracle(ideal, weight).is_limit(delta)


# -------------------------------------------------------------- flat limit


@dataclass
class FlatLimitResult:
    ideal: Ideal
    generators: list
    staircase: object  # StandardSet when the limit is a monomial ideal

    def reduced_gb(self):
        return self.ideal.artifacts.global_gb


def flat_limit(ideal, weight, cross_check=False):
    """The limit ideal I(0): partial-order initial forms of the plus-order reduced basis."""
    plus, _ = canonical_pair(weight)
    res = initial_staircase(ideal, plus)
    partial = QHOrder(plus.weight)
    gens = [initial_form(g, partial) for g in res.reduced_basis]
    limit = Ideal(gens, ideal.d)
    gb = limit.artifacts.global_gb
    stair = limit.artifacts.quotient_basis if all(len(g) == 1 for g in gb) else None
    out = FlatLimitResult(limit, gens, stair)
    if cross_check:
        oracle = degeneration_oracle(ideal, plus.weight)
        if oracle.special.artifacts.global_gb != gb:
            raise InvariantViolation(
                "flat limit disagrees with the saturation oracle: "
                f"{[str(g) for g in gb]} vs {[str(g) for g in oracle.special.artifacts.global_gb]}"
            )
    return out


# ------------------------------------------------- dual-number coefficients


def _expand(p, ring, index, N):
    """Q-coordinates of a polynomial over ``ring``: column index[(e, k)] for eps^k x^e."""
    v = [Fraction(0)] * (len(index))
    for e, c in p.terms:
        for k, a in enumerate(ring.expand(c)):
            if a and (e, k) in index:
                v[index[(e, k)]] = a
    return v


def _eps_multiples(p, ring, N):
    if N == 1:
        return [p]
    return [p.scale(ring.eps(k)) if k else p for k in range(N)]


def _ring_order(ring):
    return ring.order if isinstance(ring, DualRing) else 1


def verify_pure_power(ideal, i, r, max_degree=None):
    """Certify x_i^r in I by a degree-bounded combination of the generators."""
    d = ideal.d
    ring = ideal.ring
    e = [0] * d
    e[i] = r
    target = Polynomial.monomial(tuple(e), ring=ring)
    if target in ideal.generators:
        return True
    N = _ring_order(ring)
    top_gen = max(g.total_degree() for g in ideal.generators)
    D = max(r, top_gen) + top_gen if max_degree is None else max_degree
    monos = [m for m in box([D + 1] * d) if sum(m) <= D]
    cols = {}
    for m in monos:
        for k in range(N):
            cols[(m, k)] = len(cols)
    rows = []
    for g in ideal.generators:
        for m in monos:
            if sum(m) + g.total_degree() > D:
                continue
            for p in _eps_multiples(g.shift(m), ring, N):
                rows.append(_expand(p, ring, cols, N))
    if not rows:
        return False
    echelon, pivots = linalg.rref(rows)
    eb_rows = list(zip(pivots, echelon))
    v = _expand(target, ring, cols, N)
    for piv, row in eb_rows:
        if v[piv]:
            f = v[piv]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


def in_coeff_ideals(ideal, order, bounds, verify=True):
    """Initial coefficient ideals in_m(I) for every monomial m of the box prod [0, r_i).

    Every variable must carry a pure power x_i^{r_i} in I (verified by linear
    algebra unless ``verify`` is false); monomials outside the box have unit
    initial ideal.  Works over Q and over dual numbers.
    """
    ring = ideal.ring
    d = ideal.d
    bounds = tuple(bounds)
    if len(bounds) != d:
        raise ValueError("one bound per variable is required")
    if verify:
        for i, r in enumerate(bounds):
            if not verify_pure_power(ideal, i, r):
                raise BoundNotVerified(f"could not verify x{i + 1}^{r} in I")
    N = _ring_order(ring)
    monos = order.sorted(box(bounds), reverse=True)
    cols = {}
    for m in monos:
        for k in range(N):
            cols[(m, k)] = len(cols)
    rows = []
    for g in ideal.generators:
        for m in monos:
            p = g.shift(m)
            p = Polynomial({e: c for e, c in p.terms if all(a < b for a, b in zip(e, bounds))}, d, ring)
            if p.is_zero():
                continue
            for q in _eps_multiples(p, ring, N):
                v = _expand(q, ring, cols, N)
                if any(v):
                    rows.append(v)
    out = {m: ZERO_IDEAL for m in monos}
    if rows:
        _, pivots = linalg.rref(rows)
        for piv in pivots:
            m, k = monos[piv // N], piv % N
            cur = out[m]
            if cur.level is None or k < cur.level:
                out[m] = CoeffIdeal(k)
    return out


def in_coeff_ideal_dual(ideal, m, order, bounds, verify=True):
    """The ideal in_m(I) of the coefficient ring for a single monomial ``m``."""
    m = tuple(m)
    if any(a >= b for a, b in zip(m, bounds)):
        if verify:
            for i, r in enumerate(bounds):
                if not verify_pure_power(ideal, i, r):
                    raise BoundNotVerified(f"could not verify x{i + 1}^{r} in I")
        return UNIT_IDEAL
    return in_coeff_ideals(ideal, order, bounds, verify)[m]


def monic_pattern(descriptors, delta):
    """Whether descriptors are unit off Delta and zero on Delta."""
    for m, ci in descriptors.items():
        if m in delta:
            if not ci.is_zero:
                return False
        elif not ci.is_unit:
            return False
    return True


def residue_ideal(ideal):
    """Base change eps -> 0 of an ideal over dual numbers."""
    ring = ideal.ring
    if not isinstance(ring, DualRing):
        raise MixedRings("residue_ideal needs a dual-number ideal")
    gens = [g.map_coefficients(ring.residue, QQ) for g in ideal.generators]
    return Ideal([g for g in gens if not g.is_zero()], ideal.d, QQ)
