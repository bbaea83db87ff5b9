"""Division-free linear algebra over an arbitrary exact commutative ring."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .errors import CapExceededError
from .ring import Integers, PolynomialRing, Rationals, Ring, fresh_names

MULTILINEAR_CAP = 12
SYMBOLIC_CAP = 8


class Matrix:
    """Immutable dense matrix with entries in ``ring``."""

    __slots__ = ("ring", "rows")

    def __init__(self, ring: Ring, rows):
        self.ring = ring
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("matrices must have at least one row and column")
        w = len(self.rows[0])
        if any(len(r) != w for r in self.rows):
            raise ValueError("ragged matrix")

    @classmethod
    def from_values(cls, ring: Ring, rows):
        return cls(ring, [[ring.coerce(x) for x in r] for r in rows])

    @classmethod
    def identity(cls, ring: Ring, n: int):
        z, o = ring.zero(), ring.one()
        return cls(ring, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, ring: Ring, n: int, m: int | None = None):
        z = ring.zero()
        return cls(ring, [[z] * (n if m is None else m) for _ in range(n)])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0])

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def _same_shape(self, other):
        if not isinstance(other, Matrix) or (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("matrix shapes differ")

    def __add__(self, other):
        self._same_shape(other)
        return Matrix(self.ring, [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other):
        self._same_shape(other)
        return Matrix(self.ring, [[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix(self.ring, [[-a for a in r] for r in self.rows])

    def __matmul__(self, other):
        if self.ncols != other.nrows:
            raise ValueError("inner dimensions differ")
        cols = list(zip(*other.rows))
        z = self.ring.zero()
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix(self.ring, out)

    def scale(self, c):
        return Matrix(self.ring, [[c * a for a in r] for r in self.rows])

    def transpose(self):
        return Matrix(self.ring, list(zip(*self.rows)))

    def trace(self):
        acc = self.ring.zero()
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def map(self, fn, ring: Ring):
        return Matrix(ring, [[fn(a) for a in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = ", ".join("[" + ", ".join(self.ring.format(a) for a in r) + "]" for r in self.rows)
        return f"Matrix({self.ring}, [{body}])"


def _square(M: Matrix) -> int:
    if not M.is_square:
        raise ValueError(f"determinant of a non-square {M.nrows}x{M.ncols} matrix")
    return M.nrows


def det_dp(M: Matrix):
    """Laplace expansion along rows with memoization over column subsets.

    ``f[S]`` is the signed minor on the first ``|S|`` rows and the columns in
    ``S``; expanding along the last of those rows gives the recurrence.
    """
    n = _square(M)
    rows = M.rows
    zero = M.ring.zero()
    f = [zero] * (1 << n)
    f[0] = M.ring.one()
    for S in range(1, 1 << n):
        i = bin(S).count("1") - 1
        row = rows[i]
        acc = zero
        above = 0  # columns of S greater than j
        for j in range(n - 1, -1, -1):
            bit = 1 << j
            if S & bit:
                a = row[j]
                if a:
                    sub = f[S ^ bit]
                    if sub:
                        acc = acc - a * sub if above & 1 else acc + a * sub
                above += 1
        f[S] = acc
    return f[-1]


def det_bareiss(M: Matrix):
    """Fraction-free elimination; only valid over the integers or rationals."""
    n = _square(M)
    if not isinstance(M.ring, (Integers, Rationals)):
        raise TypeError("Bareiss elimination needs an integral domain with exact division")
    a = [list(r) for r in M.rows]
    sign = 1
    prev = M.ring.one()
    for k in range(n - 1):
        if not a[k][k]:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return M.ring.zero()
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                v = row_i[j] * akk - aik * row_k[j]
                row_i[j] = v // prev if type(v) is int else v / prev
        prev = akk
    d = a[n - 1][n - 1]
    return d if sign > 0 else -d


def det(M: Matrix):
    if isinstance(M.ring, (Integers, Rationals)) and M.nrows > 3:
        _square(M)
        return det_bareiss(M)
    return det_dp(M)


def lambda_ring(ring: Ring, count: int, prefix: str = "lambda") -> PolynomialRing:
    return PolynomialRing(ring, fresh_names(ring, prefix, count))


def char_poly(M: Matrix) -> list:
    """Coefficients of det(lambda*I - M), highest degree first."""
    n = _square(M)
    P = lambda_ring(M.ring, 1)
    lam = P.gens()[0]
    rows = [[(lam if i == j else 0) - P.constant(M.rows[i][j]) for j in range(n)] for i in range(n)]
    p = det_dp(Matrix(P, rows))
    return [p.coefficient((k,)) for k in range(n, -1, -1)]


def eval_poly_at_matrix(coeffs: Sequence, M: Matrix) -> Matrix:
    """Horner evaluation of a descending coefficient list at a square matrix."""
    n = _square(M)
    I = Matrix.identity(M.ring, n)
    acc = Matrix.zeros(M.ring, n)
    for c in coeffs:
        acc = acc @ M + I.scale(c)
    return acc


def _check_cap(n: int, cap: int, override: bool, what: str):
    if n > cap and not override:
        raise CapExceededError(f"{what} at size {n} exceeds the cap of {cap}; pass cap_override to proceed")


def multilinear_coeff(mats: Sequence[Matrix], cap_override: bool = False):
    """Coefficient of l_1*...*l_n in det(sum_i l_i M_i), by polarization.

    sum over subsets S of (-1)^(n-|S|) det(sum_{i in S} M_i).  Subset sums are
    built incrementally in Gray-code order so each step adds one matrix.
    """
    n = len(mats)
    if n == 0:
        raise ValueError("need at least one matrix")
    ring = mats[0].ring
    for M in mats:
        if M.nrows != n or M.ncols != n:
            raise ValueError(f"expected {n} matrices of size {n}x{n}")
    _check_cap(n, MULTILINEAR_CAP, cap_override, "multilinear coefficient")
    rows = [[list(r) for r in M.rows] for M in mats]
    cur = [[ring.zero()] * n for _ in range(n)]
    total = ring.zero()
    members = 0
    prev_gray = 0
    for k in range(1, 1 << n):
        gray = k ^ (k >> 1)
        bit = (gray ^ prev_gray).bit_length() - 1
        prev_gray = gray
        src = rows[bit]
        if gray >> bit & 1:
            members += 1
            for i in range(n):
                ci, si = cur[i], src[i]
                for j in range(n):
                    if si[j]:
                        ci[j] = ci[j] + si[j]
        else:
            members -= 1
            for i in range(n):
                ci, si = cur[i], src[i]
                for j in range(n):
                    if si[j]:
                        ci[j] = ci[j] - si[j]
        d = det(Matrix(ring, cur))
        if (n - members) & 1:
            total = total - d
        else:
            total = total + d
    return total


def linear_combination_det(mats: Sequence[Matrix], cap_override: bool = False, prefix: str = "lambda"):
    """det(sum_i l_i M_i) as a polynomial in fresh variables l_1..l_k."""
    if not mats:
        raise ValueError("need at least one matrix")
    n = mats[0].nrows
    _check_cap(len(mats), SYMBOLIC_CAP, cap_override, "symbolic norm form")
    ring = mats[0].ring
    P = lambda_ring(ring, len(mats), prefix)
    k = len(mats)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            terms = {}
            for v, M in enumerate(mats):
                c = M.rows[i][j]
                if c:
                    terms[tuple(int(w == v) for w in range(k))] = c
            row.append(P.from_terms(terms))
        entries.append(row)
    return det_dp(Matrix(P, entries))


def coeff_of(P, alpha: Sequence[int]):
    alpha = tuple(alpha)
    if len(alpha) != P.ring.nvars:
        raise ValueError(f"exponent vector {alpha} has the wrong length for {P.ring}")
    return P.coefficient(alpha)


def permutation_sums(C: Sequence[Sequence], ring: Ring):
    """(sum over even permutations, sum over odd permutations) of prod_i C[i][p(i)].

    Subset DP that keeps the parity of the partial assignment; with k rows
    placed on column set S, adding column j to row k contributes
    #{c in S : c > j} inversions.
    """
    n = len(C)
    zero = ring.zero()
    even = [zero] * (1 << n)
    odd = [zero] * (1 << n)
    even[0] = ring.one()
    for S in range(1, 1 << n):
        i = bin(S).count("1") - 1
        row = C[i]
        e = o = zero
        above = 0
        for j in range(n - 1, -1, -1):
            bit = 1 << j
            if S & bit:
                a = row[j]
                if a:
                    pe, po = even[S ^ bit], odd[S ^ bit]
                    if above & 1:
                        pe, po = po, pe
                    if pe:
                        e = e + a * pe
                    if po:
                        o = o + a * po
                above += 1
        even[S], odd[S] = e, o
    return even[-1], odd[-1]


def all_subsets(n: int):
    for k in range(n + 1):
        yield from combinations(range(n), k)
