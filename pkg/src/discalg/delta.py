"""Discriminant algebras as explicit quadratic algebras.

Delta is free on {1, g} where g is the class of the even-permutation orbit
sum of theta_1 (x) ... (x) theta_n.  It is presented as R[X]/(X^2 - T X + N)
with X = g, so an element is a pair (r, d) meaning r + d g.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Callable, NamedTuple, Sequence

from .algebra import (
    AlgebraHomomorphism,
    FreeAlgebra,
    discriminant,
    is_norm_preserving,
    product,
    trivial,
)
from .errors import CapExceededError, InconsistencyError, NotNormPreservingError
from .exactla import MULTILINEAR_CAP, permutation_sums
from .ferrand import (
    SymmetricInvariant,
    _linear_forms_product,
    multilinear_trace,
    multiplicity,
    norm_form,
)
from .orient import Permutation
from .ring import Integers, IntegersMod, NoExactQuotient, Rationals, Ring, UnsupportedRingError

GENERAL_CAP = 8
FAST_CAP = MULTILINEAR_CAP


class DeltaElement(NamedTuple):
    r: object
    d: object


@dataclass(frozen=True)
class QuadraticAlgebra:
    """R[X]/(X^2 - T X + N)."""

    ring: Ring
    T: object
    N: object

    def disc(self):
        return self.T * self.T - 4 * self.N

    def one(self):
        return DeltaElement(self.ring.one(), self.ring.zero())

    def generator(self):
        return DeltaElement(self.ring.zero(), self.ring.one())

    def element(self, r, d):
        return DeltaElement(self.ring.coerce(r), self.ring.coerce(d))

    def trace(self, e):
        return 2 * e.r + e.d * self.T

    def norm(self, e):
        return e.r * e.r + e.r * e.d * self.T + e.d * e.d * self.N

    def mul(self, e1, e2):
        dd = e1.d * e2.d
        return DeltaElement(e1.r * e2.r - dd * self.N, e1.r * e2.d + e2.r * e1.d + dd * self.T)

    def add(self, e1, e2):
        return DeltaElement(e1.r + e2.r, e1.d + e2.d)

    def sub(self, e1, e2):
        return DeltaElement(e1.r - e2.r, e1.d - e2.d)

    def scale(self, c, e):
        return DeltaElement(c * e.r, c * e.d)

    def involution(self, e):
        return DeltaElement(e.r + e.d * self.T, -e.d)

    def presentation(self) -> str:
        f = self.ring.format
        return f"{self.ring}[X]/(X^2 - ({f(self.T)})X + ({f(self.N)}))"

    def __str__(self):
        return f"(T, N) = ({self.ring.format(self.T)}, {self.ring.format(self.N)}) over {self.ring}"


def quad_disc(Q: QuadraticAlgebra):
    return Q.disc()


def quad_trace(Q: QuadraticAlgebra, e):
    return Q.trace(e)


def quad_norm(Q: QuadraticAlgebra, e):
    return Q.norm(e)


def quad_mul(Q: QuadraticAlgebra, e1, e2):
    return Q.mul(e1, e2)


def involution(Q: QuadraticAlgebra, e):
    return Q.involution(e)


def quad_is_split(Q: QuadraticAlgebra) -> bool:
    """Whether X^2 - T X + N has a root in the coefficient ring."""
    ring = Q.ring
    if isinstance(ring, IntegersMod):
        return any(not (x * x - Q.T * x + Q.N) for x in (ring.from_int(v) for v in range(ring.modulus)))
    if isinstance(ring, (Integers, Rationals)):
        s = ring.is_square(Q.disc())
        if s is None:
            return False
        if isinstance(ring, Integers):
            # D = T^2 - 4N forces s = T mod 2, so (T + s)/2 is integral
            return (Q.T + s) % 2 == 0
        return True
    raise UnsupportedRingError(f"split detection is not available over {ring}")


def quad_canonical_Z(Q: QuadraticAlgebra) -> QuadraticAlgebra:
    if not isinstance(Q.ring, Integers):
        raise UnsupportedRingError("canonical forms are only defined over the integers")
    D = Q.disc()
    t = D % 4
    if t not in (0, 1):
        raise InconsistencyError(f"discriminant {D} is not 0 or 1 mod 4")
    return QuadraticAlgebra(Q.ring, t, (t * t - D) // 4)


def as_algebra(Q: QuadraticAlgebra) -> FreeAlgebra:
    z, o = Q.ring.zero(), Q.ring.one()
    st = [[[o, z], [z, o]], [[z, o], [-Q.N, Q.T]]]
    return FreeAlgebra(Q.ring, st, [o, z], validate=False)


def quadratic_from_algebra(A: FreeAlgebra) -> QuadraticAlgebra:
    """Read (T, N) off a rank-2 algebra with basis (1, x)."""
    if A.rank != 2 or A.unit != A.basis(0):
        raise ValueError("need a rank-2 algebra whose first basis vector is 1")
    c = A.structure[1][1]
    return QuadraticAlgebra(A.ring, c[1], -c[0])


# -- alternating invariants ----------------------------------------------

@dataclass
class AlternatingInvariant:
    """Even-permutation-invariant tensor in the basis sym (+) c_plus g (+) c_minus g'.

    ``sym`` holds orbit coefficients on multidegrees other than (1,...,1);
    c_plus and c_minus are the coefficients of the even and odd orbit sums of theta.
    """

    algebra: FreeAlgebra
    sym: dict
    c_plus: object
    c_minus: object

    def __add__(self, other):
        out = dict(self.sym)
        for a, c in other.sym.items():
            s = out.get(a, self.algebra.ring.zero()) + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return AlternatingInvariant(self.algebra, out, self.c_plus + other.c_plus,
                                    self.c_minus + other.c_minus)

    def symmetric_part(self) -> SymmetricInvariant:
        return SymmetricInvariant(self.algebra, self.sym)


def _sym_from_linear_product(A: FreeAlgebra, p) -> dict:
    n = A.rank
    ones = (1,) * n
    sym = {}
    for e, c in p.terms.items():
        if e == ones:
            continue
        v = c * (multiplicity(e) // 2)
        if v:
            sym[e] = v
    return sym


def gamma_alternating(A: FreeAlgebra, a: Sequence) -> AlternatingInvariant:
    """Orbit coordinates of sum over even sigma of a_sigma(1) (x) ... (x) a_sigma(n).

    A non-injective index function has a transposition in its stabilizer, so
    its coefficient is half the full permanent.  Injective ones split by parity.
    """
    n = A.rank
    if len(a) != n:
        raise ValueError(f"need {n} elements")
    for x in a:
        A._check(x)
    if n == 1:
        return AlternatingInvariant(A, {}, a[0][0], A.ring.zero())
    p = _linear_forms_product(A, a)
    even, odd = permutation_sums([list(x) for x in a], A.ring)
    return AlternatingInvariant(A, _sym_from_linear_product(A, p), even, odd)


def _phi_sym(A: FreeAlgebra, sym: dict, cap_override: bool = False):
    if not sym:
        return A.ring.zero()
    nf = norm_form(A, cap_override)
    acc = A.ring.zero()
    for alpha, c in sym.items():
        v = nf.coefficient(alpha)
        if v:
            acc = acc + c * v
    return acc


def reduce(A: FreeAlgebra, t: AlternatingInvariant, Q: QuadraticAlgebra | None = None,
           cap_override: bool = False) -> DeltaElement:
    """Image in Delta: the odd orbit sum maps to T - g."""
    T = Q.T if Q is not None else trace_generator(A, cap_override)
    r = _phi_sym(A, t.sym, cap_override) + t.c_minus * T
    return DeltaElement(r, t.c_plus - t.c_minus)


def gamma_dot(A: FreeAlgebra, a: Sequence, Q: QuadraticAlgebra | None = None,
              cap_override: bool = False) -> DeltaElement:
    return reduce(A, gamma_alternating(A, a), Q, cap_override)


# -- the discriminant algebra --------------------------------------------

def trace_generator(A: FreeAlgebra, cap_override: bool = False):
    if A.rank > FAST_CAP and not cap_override:
        raise CapExceededError(f"rank {A.rank} exceeds the cap of {FAST_CAP}")
    return multilinear_trace(A, cap_override=cap_override)


def _odd_permutations(n: int):
    for p in permutations(range(n)):
        if Permutation(p).sign() < 0:
            yield p


def norm_general(A: FreeAlgebra, T=None, cap_override: bool = False):
    """N as the product of the even and odd orbit sums of theta, reduced into Delta.

    That product equals the sum over odd tau of the even orbit sum of
    (theta_1 theta_tau(1), ..., theta_n theta_tau(n)).
    """
    n = A.rank
    if n > GENERAL_CAP and not cap_override:
        raise CapExceededError(f"general path at rank {n} exceeds the cap of {GENERAL_CAP}")
    T = trace_generator(A, cap_override) if T is None else T
    ring = A.ring
    basis = A.basis_elements()
    prods = [[A.mul(basis[i], basis[j]) for j in range(n)] for i in range(n)]
    total_lin = None
    c_plus = c_minus = ring.zero()
    for tau in _odd_permutations(n):
        elems = [prods[i][tau[i]] for i in range(n)]
        p = _linear_forms_product(A, elems)
        total_lin = p if total_lin is None else total_lin + p
        e, o = permutation_sums([list(x) for x in elems], ring)
        c_plus = c_plus + e
        c_minus = c_minus + o
    sym = _sym_from_linear_product(A, total_lin)
    r = _phi_sym(A, sym, cap_override) + c_minus * T
    d = c_plus - c_minus
    if d:
        raise InconsistencyError(f"general norm computation left a generator component {ring.format(d)}")
    return r


def norm_fast(A: FreeAlgebra, T=None, cap_override: bool = False):
    """N = (T^2 - disc)/4; raises NoExactQuotient when that is not well defined."""
    T = trace_generator(A, cap_override) if T is None else T
    ring = A.ring
    try:
        return ring.exact_div(T * T - discriminant(A), ring.from_int(4))
    except ZeroDivisionError as exc:
        raise NoExactQuotient("4 is zero in the coefficient ring") from exc


def discriminant_algebra(A: FreeAlgebra, path: str = "auto", cap_override: bool = False) -> QuadraticAlgebra:
    """(T, N) with T the trace and N the norm of the canonical generator.

    path: "fast" divides T^2 - disc by 4, "general" multiplies the two orbit
    sums, "both" runs both and insists they agree, "auto" tries fast first.
    """
    ring = A.ring
    if A.rank <= 1:
        return QuadraticAlgebra(ring, ring.one(), ring.zero())
    key = ("delta", path)
    got = A.memo.get(key)
    if got is not None:
        return got
    T = trace_generator(A, cap_override)
    if path == "fast":
        N = norm_fast(A, T, cap_override)
    elif path == "general":
        N = norm_general(A, T, cap_override)
    elif path == "both":
        N = norm_general(A, T, cap_override)
        try:
            N2 = norm_fast(A, T, cap_override)
        except NoExactQuotient:
            N2 = N
        if N2 != N:
            raise InconsistencyError(
                f"fast and general paths disagree: {ring.format(N2)} vs {ring.format(N)}")
    elif path == "auto":
        try:
            N = norm_fast(A, T, cap_override)
        except NoExactQuotient:
            N = norm_general(A, T, cap_override)
    else:
        raise ValueError(f"unknown path {path!r}")
    Q = QuadraticAlgebra(ring, T, N)
    if Q.disc() != discriminant(A):
        raise InconsistencyError("T^2 - 4N differs from the discriminant")
    A.memo[key] = Q
    return Q


def star_product(Q1: QuadraticAlgebra, Q2: QuadraticAlgebra, path: str = "auto") -> QuadraticAlgebra:
    if Q1.ring != Q2.ring:
        raise ValueError("quadratic algebras over different rings")
    return discriminant_algebra(product(as_algebra(Q1), as_algebra(Q2)), path=path)


def base_factor(A: FreeAlgebra) -> FreeAlgebra:
    """R x A with the R factor first."""
    return product(trivial(A.ring), A)


def delta_of_hom(f: AlgebraHomomorphism, path: str = "auto") -> Callable:
    """The induced map Delta_A -> Delta_B, as a function on (r, d) pairs."""
    if not is_norm_preserving(f):
        raise NotNormPreservingError("homomorphism does not preserve characteristic polynomials")
    B = f.target
    QB = discriminant_algebra(B, path=path)
    g = reduce(B, gamma_alternating(B, list(f.images)), QB)

    def apply(e):
        return DeltaElement(e.r + e.d * g.r, e.d * g.d)

    apply.image_of_generator = g
    return apply


def schur_trace(n: int):
    """T for Z[x]/(x^n - 1), via polarization only."""
    from .algebra import monogenic

    ring = Integers()
    A = monogenic(ring, [1] + [0] * (n - 1) + [-1])
    return multilinear_trace(A)


__all__ = [
    "AlternatingInvariant",
    "DeltaElement",
    "QuadraticAlgebra",
    "as_algebra",
    "base_factor",
    "delta_of_hom",
    "discriminant_algebra",
    "gamma_alternating",
    "gamma_dot",
    "involution",
    "norm_fast",
    "norm_general",
    "quad_canonical_Z",
    "quad_disc",
    "quad_is_split",
    "quad_mul",
    "quad_norm",
    "quad_trace",
    "quadratic_from_algebra",
    "reduce",
    "schur_trace",
    "star_product",
    "trace_generator",
]
