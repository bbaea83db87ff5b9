"""The Ferrand homomorphism on symmetric tensors, evaluated on orbit elements.

A symmetric tensor in A^{(x)n} is stored in the orbit basis: multidegree
alpha (alpha_j = how many tensor slots carry theta_j) maps to its coefficient.
Phi of the orbit sum indexed by alpha is the lambda^alpha coefficient of
Nm(lambda_1 theta_1 + ... + lambda_n theta_n).
"""

from __future__ import annotations

from itertools import combinations_with_replacement
from math import factorial, prod
from typing import Iterator, Sequence

from .algebra import FreeAlgebra
from .errors import CapExceededError
from .exactla import SYMBOLIC_CAP, lambda_ring, linear_combination_det, multilinear_coeff
from .ring import PolynomialRing, fresh_names

REWRITING_CAP = 4


def multidegrees(n: int, total: int | None = None) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length n summing to ``total`` (default n), grlex-descending."""
    total = n if total is None else total
    out = []
    for combo in combinations_with_replacement(range(n), total):
        alpha = [0] * n
        for j in combo:
            alpha[j] += 1
        out.append(tuple(alpha))
    out.sort(reverse=True)
    return iter(out)


def check_multidegree(A: FreeAlgebra, alpha: Sequence[int]) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != A.rank or any(a < 0 for a in alpha) or sum(alpha) != A.rank:
        raise ValueError(f"{alpha} is not a multidegree of weight {A.rank} in {A.rank} slots")
    return alpha


def multiplicity(alpha: Sequence[int]) -> int:
    """Size of the stabilizer of any index function in the orbit alpha."""
    return prod(factorial(a) for a in alpha)


class SymmetricInvariant:
    """Finite linear combination of orbit elements gamma^alpha(theta)."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: FreeAlgebra, coeffs: dict | None = None):
        self.algebra = algebra
        self.coeffs = {}
        for alpha, c in (coeffs or {}).items():
            alpha = check_multidegree(algebra, alpha)
            c = algebra.ring.coerce(c)
            if c:
                self.coeffs[alpha] = c

    def __add__(self, other):
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise ValueError("invariants of different algebras")
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            s = out.get(a, self.algebra.ring.zero()) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return SymmetricInvariant(self.algebra, out)

    def scale(self, c):
        return SymmetricInvariant(self.algebra, {a: v * c for a, v in self.coeffs.items()})

    def __getitem__(self, alpha):
        return self.coeffs.get(tuple(alpha), self.algebra.ring.zero())

    def __eq__(self, other):
        return isinstance(other, SymmetricInvariant) and self.coeffs == other.coeffs

    def __repr__(self):
        ring = self.algebra.ring
        inner = ", ".join(f"{a}: {ring.format(c)}" for a, c in sorted(self.coeffs.items(), reverse=True))
        return f"SymmetricInvariant({{{inner}}})"


def norm_form(A: FreeAlgebra, cap_override: bool = False):
    """Nm(sum_i lambda_i theta_i) in R[lambda_1..lambda_n]."""
    got = A.memo.get("norm_form")
    if got is None:
        if A.rank > SYMBOLIC_CAP and not cap_override:
            raise CapExceededError(
                f"symbolic norm form at rank {A.rank} exceeds the cap of {SYMBOLIC_CAP}")
        got = linear_combination_det(A.basis_matrices(), cap_override=True)
        A.memo["norm_form"] = got
    return got


def multilinear_trace(A: FreeAlgebra, cap_override: bool = False):
    """Phi of gamma^{(1,...,1)}(theta), by polarization."""
    got = A.memo.get("multilinear")
    if got is None:
        got = multilinear_coeff(A.basis_matrices(), cap_override=cap_override)
        A.memo["multilinear"] = got
    return got


def phi_orbit(A: FreeAlgebra, alpha: Sequence[int], cap_override: bool = False):
    alpha = check_multidegree(A, alpha)
    if all(a == 1 for a in alpha):
        return multilinear_trace(A, cap_override)
    return norm_form(A, cap_override).coefficient(alpha)


def phi(A: FreeAlgebra, t: SymmetricInvariant, cap_override: bool = False):
    acc = A.ring.zero()
    for alpha, c in t.coeffs.items():
        v = phi_orbit(A, alpha, cap_override)
        if v:
            acc = acc + c * v
    return acc


def _linear_forms_product(A: FreeAlgebra, elems: Sequence, names_prefix: str = "mu"):
    """prod_i (sum_j c_ij mu_j) where c_ij are the coordinates of elems[i]."""
    n = A.rank
    P = lambda_ring(A.ring, n, names_prefix)
    acc = P.one()
    for x in elems:
        terms = {}
        for j, c in enumerate(x):
            if c:
                terms[tuple(int(k == j) for k in range(n))] = c
        acc = acc * P.from_terms(terms)
    return acc


def gamma_sym(A: FreeAlgebra, a: Sequence) -> SymmetricInvariant:
    """Orbit coordinates of sum_{sigma in S_n} a_sigma(1) (x) ... (x) a_sigma(n).

    The coefficient of a single pure tensor of orbit alpha is a permanent, equal
    to alpha! times the mu^alpha coefficient of the product of linear forms.
    """
    if len(a) != A.rank:
        raise ValueError(f"need {A.rank} elements")
    p = _linear_forms_product(A, a)
    return SymmetricInvariant(A, {e: c * multiplicity(e) for e, c in p.terms.items()})


def elementary_invariant(A: FreeAlgebra, a, k: int) -> SymmetricInvariant:
    """Orbit coordinates of e_k(a): the sum over k-subsets of slots of a, 1 elsewhere.

    The coefficient on orbit alpha is the t^k coefficient of
    prod_j (u_j + t c_j)^alpha_j, with u the coordinates of 1 and c those of a.
    """
    n = A.rank
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}")
    A._check(a)
    u = A.unit
    ring = A.ring
    # coefficient lists in t, truncated at degree k
    factors = [[u[j], a[j]] for j in range(n)]
    out = {}
    for alpha in multidegrees(n):
        poly = [ring.one()] + [ring.zero()] * k
        for j, e in enumerate(alpha):
            for _ in range(e):
                nxt = [ring.zero()] * (k + 1)
                for d, v in enumerate(poly):
                    if not v:
                        continue
                    nxt[d] = nxt[d] + v * factors[j][0]
                    if d < k:
                        nxt[d + 1] = nxt[d + 1] + v * factors[j][1]
                poly = nxt
        if poly[k]:
            out[alpha] = poly[k]
    return SymmetricInvariant(A, out)


def ferrand_via_rewriting(A: FreeAlgebra, alpha: Sequence[int], cap_override: bool = False):
    """Phi(gamma^alpha) using only characteristic polynomials and products in A.

    Expand prod over slots of P(t) = prod_j (1 + t_j theta_j) in two ways.
    Writing P = 1 + sum_j Q_j(t) theta_j, the t^beta coefficient equals
    sum_{beta'} [t^beta](prod_j Q_j^{beta'_j}) F(beta'), where F(beta') is Phi of
    the orbit sum with beta'_j slots theta_j and the remaining slots 1.  On the
    other hand Phi sends it to prod_j s_{beta_j}(theta_j).  The leading term is
    F(beta) itself, giving a recursion on |beta|.
    """
    alpha = check_multidegree(A, alpha)
    n = A.rank
    if n > REWRITING_CAP and not cap_override:
        raise CapExceededError(f"rewriting oracle at rank {n} exceeds the cap of {REWRITING_CAP}")
    table = _rewriting_table(A)
    return table[alpha]


def _rewriting_table(A: FreeAlgebra) -> dict:
    got = A.memo.get("rewriting")
    if got is not None:
        return got
    n = A.rank
    ring = A.ring
    T = PolynomialRing(ring, fresh_names(ring, "t", n))
    # P(t) as an element of A with coefficients in R[t]
    coords = [T.constant(c) for c in A.unit]
    for j in range(n):
        tj = T.gens()[j]
        theta = A.basis(j)
        # multiply by (1 + t_j theta_j): x -> x + t_j * (x * theta_j)
        shifted = [T.zero()] * n
        for i, x in enumerate(coords):
            if not x:
                continue
            for k, c in A._sparse[i][j]:
                shifted[k] = shifted[k] + x * c
        coords = [x + tj * s for x, s in zip(coords, shifted)]
    # subtract the unit and read off Q_j
    Q = [x - T.constant(u) for x, u in zip(coords, A.unit)]
    Q = [_truncate(q, n) for q in Q]

    s_vals = [[A.s_k(A.basis(j), k) for k in range(n + 1)] for j in range(n)]
    betas = [b for d in range(n + 1) for b in multidegrees(n, d)]
    qpow: dict = {}

    def q_power(beta):
        got = qpow.get(beta)
        if got is None:
            if not any(beta):
                got = T.one()
            else:
                j = max(i for i, b in enumerate(beta) if b)
                prev = list(beta)
                prev[j] -= 1
                got = _truncate(q_power(tuple(prev)) * Q[j], n)
            qpow[beta] = got
        return got

    F: dict = {}
    for beta in betas:
        val = ring.one()
        for j, b in enumerate(beta):
            val = val * s_vals[j][b]
        d = sum(beta)
        for lower in betas:
            if sum(lower) >= d:
                break
            c = q_power(lower).coefficient(beta)
            if c:
                val = val - c * F[lower]
        F[beta] = val
    A.memo["rewriting"] = F
    return F


def _truncate(p, deg: int):
    return type(p)(p.ring, {e: c for e, c in p.terms.items() if sum(e) <= deg})


def phi_of_elementary(A: FreeAlgebra, a, k: int):
    return phi(A, elementary_invariant(A, a, k))
