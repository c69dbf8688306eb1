"""Global Groebner engine over Q: Buchberger, quotient algebra data, and the
torus-degeneration oracle computed by saturation.

Internally polynomials are plain dicts ``{exponent: Fraction}``; monomial
orders are sort-key functions on exponents (larger key = larger monomial).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .coeff import QQ
from .errors import DimensionMismatch, MixedRings, NotZeroDimensional
from .poly import ParamPolynomial, Polynomial, torus_act
from .staircase import StandardSet


@lru_cache(maxsize=None)
def grevlex_key(e):
    return (sum(e),) + tuple(-v for v in reversed(e))


def block_key(*blocks):
    """Product order: ``blocks`` is a sequence of (start, stop, key) slices, most significant first."""

    @lru_cache(maxsize=None)
    def key(e):
        return tuple(k(e[a:b]) for a, b, k in blocks)

    return key


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a, b):
    return all(not (x and y) for x, y in zip(a, b))


class _Poly:
    """Monic working polynomial with cached leading exponent and sugar degree."""

    __slots__ = ("terms", "lm", "sugar")

    def __init__(self, terms, key, sugar=None):
        lm = max(terms, key=key)
        c = terms[lm]
        if c != 1:
            inv = 1 / c
            terms = {e: v * inv for e, v in terms.items()}
        self.terms = terms
        self.lm = lm
        self.sugar = max(sum(e) for e in terms) if sugar is None else sugar


def _reduce(f, basis, key):
    """Remainder of dict ``f`` modulo the monic ``_Poly`` list ``basis``."""
    f = dict(f)
    rem = {}
    while f:
        lm = max(f, key=key)
        c = f[lm]
        for g in basis:
            if _divides(g.lm, lm):
                q = _sub(lm, g.lm)
                for e, v in g.terms.items():
                    ne = tuple(a + b for a, b in zip(e, q))
                    nv = f.get(ne, 0) - c * v
                    if nv:
                        f[ne] = nv
                    else:
                        f.pop(ne, None)
                break
        else:
            rem[lm] = c
            del f[lm]
    return rem


def _spoly(f, g):
    lcm = _lcm(f.lm, g.lm)
    a = _sub(lcm, f.lm)
    b = _sub(lcm, g.lm)
    out = {}
    for e, v in f.terms.items():
        ne = tuple(x + y for x, y in zip(e, a))
        out[ne] = v
    for e, v in g.terms.items():
        ne = tuple(x + y for x, y in zip(e, b))
        nv = out.get(ne, 0) - v
        if nv:
            out[ne] = nv
        else:
            out.pop(ne, None)
    return out


def buchberger(polys, key):
    """Reduced Groebner basis of the dicts ``polys`` for the order ``key``.

    Returns a list of monic dicts sorted by decreasing leading monomial.
    """
    store = []
    current = []  # indices into store forming the running basis
    pairs = []

    def lcm_of(i, j):
        return _lcm(store[i].lm, store[j].lm)

    def pair_sugar(i, j):
        lcm = lcm_of(i, j)
        s = sum(lcm)
        return max(store[i].sugar + s - sum(store[i].lm), store[j].sugar + s - sum(store[j].lm))

    def update(h):
        nonlocal current, pairs
        hlm = store[h].lm
        cand = [(h, g) for g in current]
        kept = []
        for idx, (_, g1) in enumerate(cand):
            l1 = _lcm(hlm, store[g1].lm)
            if _coprime(hlm, store[g1].lm):
                kept.append(g1)
                continue
            others = [g2 for _, g2 in cand[idx + 1:]] + kept
            if not any(_divides(_lcm(hlm, store[g2].lm), l1) for g2 in others):
                kept.append(g1)
        new_pairs = [(g, h) for g in kept if not _coprime(hlm, store[g].lm)]
        survivors = []
        for i, j in pairs:
            l = lcm_of(i, j)
            if _divides(hlm, l) and _lcm(store[i].lm, hlm) != l and _lcm(hlm, store[j].lm) != l:
                continue
            survivors.append((i, j))
        pairs = survivors + new_pairs
        current = [g for g in current if not _divides(hlm, store[g].lm)] + [h]

    def add(r, sugar=None):
        store.append(_Poly(r, key, sugar))
        h = len(store) - 1
        update(h)
        # keep the tails of the running basis reduced by the newcomer; this
        # stops coefficient growth from feeding on itself
        new = store[h]
        for g in current:
            if g != h and any(_divides(new.lm, e) for e in store[g].terms if e != store[g].lm):
                old = store[g]
                tail = {e: v for e, v in old.terms.items() if e != old.lm}
                r2 = _reduce(tail, [new], key)
                r2[old.lm] = Fraction(1)
                store[g] = _Poly(r2, key, old.sugar)

    work = [dict(p) for p in polys if p]
    work.sort(key=lambda p: key(max(p, key=key)))
    for p in work:
        r = _reduce(p, [store[g] for g in current], key)
        if r:
            add(r)

    while pairs:
        best = min(range(len(pairs)), key=lambda k: (pair_sugar(*pairs[k]), key(lcm_of(*pairs[k]))))
        i, j = pairs.pop(best)
        s = _spoly(store[i], store[j])
        if not s:
            continue
        sugar = pair_sugar(i, j)
        r = _reduce(s, [store[g] for g in current], key)
        if r:
            add(r, sugar)

    basis = [store[g] for g in current]
    # minimalize then fully interreduce
    basis = [g for g in basis if not any(h is not g and _divides(h.lm, g.lm) for h in basis)]
    reduced = []
    for g in basis:
        others = [h for h in basis if h is not g]
        tail = {e: v for e, v in g.terms.items() if e != g.lm}
        r = _reduce(tail, others, key)
        r[g.lm] = Fraction(1)
        reduced.append(r)
    reduced.sort(key=lambda p: key(max(p, key=key)), reverse=True)
    return reduced


def leading_exponent(p, key):
    return max(p, key=key)


def s_pairs_reduce_to_zero(basis, key):
    """Buchberger criterion: every S-polynomial of ``basis`` reduces to 0."""
    wrapped = [_Poly(dict(p), key) for p in basis if p]
    for a in range(len(wrapped)):
        for b in range(a + 1, len(wrapped)):
            s = _spoly(wrapped[a], wrapped[b])
            if s and _reduce(s, wrapped, key):
                return False
    return True


def reduce_modulo(f, basis, key):
    wrapped = [_Poly(dict(p), key) for p in basis if p]
    return _reduce(dict(f), wrapped, key)


def _staircase_from_leads(leads, d):
    """Standard monomials of a zero-dimensional monomial ideal, or None if infinite."""
    pure = [None] * d
    for e in leads:
        nz = [i for i, v in enumerate(e) if v]
        if len(nz) == 1:
            i = nz[0]
            pure[i] = e[i] if pure[i] is None else min(pure[i], e[i])
        elif not nz:
            return []
    if any(p is None for p in pure):
        return None
    out = []

    def rec(prefix):
        i = len(prefix)
        if i == d:
            e = tuple(prefix)
            if not any(_divides(l, e) for l in leads):
                out.append(e)
            return
        for v in range(pure[i]):
            rec(prefix + [v])

    rec([])
    return out


def _to_dicts(polys, ring):
    out = []
    for p in polys:
        if p.ring != ring:
            raise MixedRings("generators over different rings")
        out.append(dict(p.terms))
    return out


@dataclass
class EngineArtifacts:
    """Reduced grevlex basis, quotient basis and multiplication matrices of a zero-dimensional ideal."""

    d: int
    global_gb: list
    quotient_basis: StandardSet
    basis: list  # quotient monomials, increasing in grevlex
    mult_matrices: list
    index: dict = field(repr=False)

    @property
    def n(self):
        return len(self.basis)

    def reduce(self, f):
        """Remainder of a Polynomial modulo the grevlex basis, as a dict."""
        return reduce_modulo(dict(f.terms), [dict(g.terms) for g in self.global_gb], grevlex_key)

    def vector(self, rem):
        v = [Fraction(0)] * self.n
        for e, c in rem.items():
            v[self.index[e]] = c
        return v

    def normal_form(self, f):
        if f.d != self.d:
            raise DimensionMismatch("polynomial and ideal dimensions differ")
        return self.vector(self.reduce(f))

    def monomial_vector(self, e):
        """Normal form of x^e computed by applying multiplication matrices to 1."""
        v = [Fraction(0)] * self.n
        if self.n == 0:
            return v
        v[self.index[(0,) * self.d]] = Fraction(1)
        for i, k in enumerate(e):
            for _ in range(k):
                v = linalg.matvec(self.mult_matrices[i], v)
        return v

    def from_vector(self, v):
        return Polynomial({self.basis[k]: c for k, c in enumerate(v) if c}, self.d)


class Ideal:
    """An ideal given by generators, with lazily cached engine artifacts."""

    def __init__(self, generators, d=None, ring=None):
        gens = []
        for g in generators:
            if d is None:
                d = g.d
            if g.d != d:
                raise DimensionMismatch("generators have different dimensions")
            if ring is None:
                ring = g.ring
            if g.ring != ring:
                raise MixedRings("generators over different coefficient rings")
            if not g.is_zero() and g not in gens:
                gens.append(g)
        if d is None:
            raise ValueError("dimension of an ideal without generators must be given")
        self.d = d
        self.ring = QQ if ring is None else ring
        self.generators = tuple(gens)
        self.cache = {}

    @classmethod
    def monomial(cls, delta):
        """The monomial ideal I^Delta."""
        return cls(delta.monomial_ideal(), delta.d)

    @property
    def artifacts(self):
        if "artifacts" not in self.cache:
            self.cache["artifacts"] = groebner_global(self)
        return self.cache["artifacts"]

    def contains(self, f):
        return not self.artifacts.reduce(f)

    def quotient_dimension(self):
        return self.artifacts.n

    def __repr__(self):
        return "Ideal<" + ", ".join(str(g) for g in self.generators) + ">"


def groebner_global(ideal):
    """Engine artifacts of a zero-dimensional ideal over Q (grevlex)."""
    if ideal.ring != QQ:
        raise MixedRings("the Groebner engine works over the rational field only")
    d = ideal.d
    gb = buchberger(_to_dicts(ideal.generators, QQ), grevlex_key)
    gb_polys = [Polynomial(g, d) for g in gb]
    leads = [max(g, key=grevlex_key) for g in gb]
    std = _staircase_from_leads(leads, d)
    if std is None:
        missing = [
            i + 1 for i in range(d) if not any(l[i] and sum(l) == l[i] for l in leads)
        ]
        raise NotZeroDimensional(
            "no pure power of " + ", ".join(f"x{i}" for i in missing) + " among leading terms"
        )
    basis = sorted(std, key=grevlex_key)
    index = {e: k for k, e in enumerate(basis)}
    n = len(basis)
    wrapped = [_Poly(dict(g), grevlex_key) for g in gb]
    mats = []
    for i in range(d):
        m = linalg.zeros(n, n)
        for j, b in enumerate(basis):
            e = b[:i] + (b[i] + 1,) + b[i + 1:]
            rem = _reduce({e: Fraction(1)}, wrapped, grevlex_key)
            for ee, c in rem.items():
                m[index[ee]][j] = c
        mats.append(m)
    return EngineArtifacts(d, gb_polys, StandardSet(std, d), basis, mats, index)


def normal_form(f, artifacts):
    return artifacts.normal_form(f)


def min_poly(artifacts, i):
    """Monic generator of I intersected with Q[x_i], from powers of the i-th multiplication matrix."""
    n = artifacts.n
    m = artifacts.mult_matrices[i]
    eb = linalg.EchelonBasis(n * n)
    power = linalg.identity(n)
    k = 0
    while True:
        flat = [v for row in power for v in row]
        comb = eb.add(flat, k)
        if comb is not None:
            coeffs = {k: Fraction(1)}
            for j, c in comb.items():
                coeffs[j] = -c
            terms = {}
            for j, c in coeffs.items():
                e = [0] * artifacts.d
                e[i] = j
                terms[tuple(e)] = c
            return Polynomial(terms, artifacts.d)
        power = linalg.matmul(m, power)
        k += 1


def matrices_commute(artifacts):
    ms = artifacts.mult_matrices
    for a in range(len(ms)):
        for b in range(a + 1, len(ms)):
            if linalg.matmul(ms[a], ms[b]) != linalg.matmul(ms[b], ms[a]):
                return False
    return True


def poly_of_matrix(p, i, artifacts):
    """Evaluate a polynomial in x_i (univariate in variable i) at the i-th multiplication matrix."""
    n = artifacts.n
    m = artifacts.mult_matrices[i]
    out = linalg.zeros(n, n)
    power = linalg.identity(n)
    top = p.degree_in(i)
    coeffs = {e[i]: c for e, c in p.terms}
    for k in range(top + 1):
        c = coeffs.get(k)
        if c:
            for r in range(n):
                for s in range(n):
                    if power[r][s]:
                        out[r][s] += c * power[r][s]
        power = linalg.matmul(m, power)
    return out


@dataclass
class DegenerationResult:
    """Saturated torus family, its fiber over t = 0, and rank data."""

    family: list  # ParamPolynomials generating I(t) (a Groebner basis, x-block over t)
    shifts: list
    special: Ideal
    special_dimension: int
    special_staircase: object  # StandardSet when the fiber is a monomial ideal, else None
    generic_rank: int

    def is_limit(self, delta):
        """True iff I(0) = I^Delta and the generic rank is #Delta."""
        return (
            self.special_staircase is not None
            and self.special_staircase == delta
            and self.generic_rank == delta.n
        )

    @property
    def is_bb(self):
        return self.special_staircase is not None and self.special_dimension == self.generic_rank


def _is_monomial_ideal(gb):
    return all(len(g) == 1 for g in gb)


def degeneration_oracle(ideal, weight):
    """Flat limit of the torus orbit of ``ideal`` by saturation.

    The torus-translated generators (of the reduced grevlex basis, which
    generates the same ideal) are saturated with respect to t by adjoining u
    with u*t = 1 and eliminating u under the block order u >> x >> t.  The
    surviving elements form a Groebner basis of I(t) for x >> t, whose x-parts
    give the rank over Q(t); substituting t = 0 gives generators of I(0).
    """
    d = ideal.d
    weight = tuple(weight)
    if len(weight) != d:
        raise DimensionMismatch("weight length differs from the number of variables")
    art = ideal.artifacts
    gens = list(art.global_gb)
    shifts = []
    # layout: (u, x1..xd, t)
    D = d + 2
    polys = []
    for g in gens:
        p, M = torus_act(g, weight)
        shifts.append(M)
        polys.append({(0,) + e[1:] + (e[0],): c for e, c in p.terms})
    ut = [0] * D
    ut[0] = 1
    ut[D - 1] = 1
    polys.append({tuple(ut): Fraction(1), (0,) * D: Fraction(-1)})
    key = block_key((0, 1, grevlex_key), (1, d + 1, grevlex_key), (d + 1, D, grevlex_key))
    gb = buchberger(polys, key)
    family = [g for g in gb if all(e[0] == 0 for e in g)]
    fam_xt = [{e[1:]: c for e, c in g.items()} for g in family]  # (x..., t)
    # generic rank over Q(t): x-parts of the leading monomials for x >> t
    xkey = block_key((0, d, grevlex_key), (d, d + 1, grevlex_key))
    x_leads = [max(g, key=xkey)[:d] for g in fam_xt]
    generic = _staircase_from_leads(x_leads, d)
    if generic is None:
        raise NotZeroDimensional("the torus family is not finite over Q(t)")
    family_polys = [
        ParamPolynomial({(e[d],) + e[:d]: c for e, c in g.items()}, d + 1) for g in fam_xt
    ]
    special_gens = [p.fiber_at_zero() for p in family_polys]
    special = Ideal([g for g in special_gens if not g.is_zero()], d)
    sgb = buchberger(_to_dicts(special.generators, QQ), grevlex_key)
    leads = [max(g, key=grevlex_key) for g in sgb]
    sstd = _staircase_from_leads(leads, d)
    if sstd is None:
        raise NotZeroDimensional("the special fiber is not zero-dimensional")
    stair = StandardSet(sstd, d) if _is_monomial_ideal(sgb) else None
    return DegenerationResult(family_polys, shifts, special, len(sstd), stair, len(generic))
