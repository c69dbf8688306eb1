"""Small exact linear algebra over the rationals (lists of Fractions)."""

from fractions import Fraction


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n):
    m = zeros(n, n)
    for i in range(n):
        m[i][i] = Fraction(1)
    return m


def matmul(a, b):
    if not a:
        return []
    cols = len(b[0]) if b else 0
    out = zeros(len(a), cols)
    for i, row in enumerate(a):
        oi = out[i]
        for k, v in enumerate(row):
            if v:
                bk = b[k]
                for j in range(cols):
                    if bk[j]:
                        oi[j] += v * bk[j]
    return out


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v) if x and y), Fraction(0)) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def is_zero_matrix(a):
    return all(not v for row in a for v in row)


def rref(rows):
    """Reduced row echelon form; returns (matrix, pivot columns)."""
    m = [list(r) for r in rows]
    pivots = []
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c]), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        inv = 1 / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows):
    return len(rref(rows)[1]) if rows else 0


def det(a):
    n = len(a)
    m = [list(r) for r in a]
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        piv = m[c][c]
        result *= piv
        for i in range(c + 1, n):
            if m[i][c]:
                f = m[i][c] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return sign * result


def charpoly(a):
    """Coefficients [1, c1, ..., cn] of det(lambda*I - a), via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [Fraction(1)]
    mk = zeros(n, n)
    for k in range(1, n + 1):
        # M_k = A M_{k-1} + c_{k-1} I ; c_k = -tr(A M_k) / k
        mk = matmul(a, mk)
        for i in range(n):
            mk[i][i] += coeffs[-1]
        am = matmul(a, mk)
        coeffs.append(-sum(am[i][i] for i in range(n)) / k)
    return coeffs


class EchelonBasis:
    """Incrementally maintained basis of a subspace of Q^n.

    Each stored row remembers how it is written in terms of the vectors that
    were accepted, so a dependent vector can be expressed as a combination of
    accepted ones.
    """

    def __init__(self, dim):
        self.dim = dim
        self.rows = []  # (pivot, vector, combination dict label -> coeff)
        self.labels = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v):
        """Return (residue, combination) with v = residue + sum combination[l] * vec(l)."""
        v = list(v)
        comb = {}
        for piv, row, rc in self.rows:
            f = v[piv]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
                for lbl, c in rc.items():
                    comb[lbl] = comb.get(lbl, 0) + f * c
        return v, {k: c for k, c in comb.items() if c}

    def add(self, v, label):
        """Try to add ``v``; return None if independent, else its combination."""
        res, comb = self.reduce(v)
        piv = next((i for i, a in enumerate(res) if a), None)
        if piv is None:
            return comb
        inv = 1 / res[piv]
        row = [a * inv for a in res]
        rc = {k: -c * inv for k, c in comb.items()}
        rc[label] = rc.get(label, 0) + inv
        # keep the rows fully reduced with respect to the new pivot
        new_rows = []
        for p, r, c in self.rows:
            if r[piv]:
                f = r[piv]
                r = [a - f * b for a, b in zip(r, row)]
                c = dict(c)
                for k, val in rc.items():
                    c[k] = c.get(k, 0) - f * val
                c = {k: x for k, x in c.items() if x}
            new_rows.append((p, r, c))
        new_rows.append((piv, row, rc))
        self.rows = new_rows
        self.labels.append(label)
        return None
