"""Finite free commutative algebras given by structure constants."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import AlgebraAxiomError
from .exactla import Matrix, char_poly, det
from .ring import (
    Integers,
    IntegersMod,
    ParseError,
    PolynomialRing,
    Ring,
    RingError,
    element_to_json,
    ring_from_json,
)


@dataclass
class AxiomReport:
    commutative: list = field(default_factory=list)
    unital: list = field(default_factory=list)
    associative: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.commutative or self.unital or self.associative)

    def summary(self) -> str:
        if self.ok:
            return "ok"
        parts = []
        if self.commutative:
            parts.append(f"not commutative at {self.commutative[0]}")
        if self.unital:
            parts.append(f"unit fails on basis element {self.unital[0]}")
        if self.associative:
            parts.append(f"not associative at {self.associative[0]}")
        return "; ".join(parts)


class FreeAlgebra:
    """A commutative R-algebra, free of rank n on a basis theta_1..theta_n.

    ``structure[i][j][k]`` is the theta_k coordinate of theta_i*theta_j and
    ``unit`` holds the coordinates of 1.
    """

    def __init__(self, ring: Ring, structure, unit, validate: bool = True):
        self.ring = ring
        n = len(structure)
        if n < 1:
            raise ValueError("rank must be at least 1")
        st = []
        for i in range(n):
            if len(structure[i]) != n:
                raise ValueError("structure constants must form an n x n x n array")
            row = []
            for j in range(n):
                if len(structure[i][j]) != n:
                    raise ValueError("structure constants must form an n x n x n array")
                row.append(tuple(ring.coerce(c) for c in structure[i][j]))
            st.append(tuple(row))
        self.structure = tuple(st)
        if len(unit) != n:
            raise ValueError("unit vector has the wrong length")
        self.unit = tuple(ring.coerce(c) for c in unit)
        self.rank = n
        # sparse view: (i, j) -> [(k, c), ...]
        self._sparse = [[[(k, c) for k, c in enumerate(self.structure[i][j]) if c] for j in range(n)]
                        for i in range(n)]
        self.memo: dict = {}
        if validate:
            report = self.check_axioms()
            if not report.ok:
                raise AlgebraAxiomError(report.summary())

    def __eq__(self, other):
        return (isinstance(other, FreeAlgebra) and self.ring == other.ring
                and self.structure == other.structure and self.unit == other.unit)

    def __hash__(self):
        return hash((self.structure, self.unit))

    def __repr__(self):
        return f"FreeAlgebra(rank={self.rank}, ring={self.ring})"

    # -- elements --------------------------------------------------------

    def zero(self):
        return (self.ring.zero(),) * self.rank

    def one(self):
        return self.unit

    def basis(self, i: int):
        z, o = self.ring.zero(), self.ring.one()
        return tuple(o if k == i else z for k in range(self.rank))

    def basis_elements(self):
        return [self.basis(i) for i in range(self.rank)]

    def element(self, coords):
        if len(coords) != self.rank:
            raise ValueError(f"expected {self.rank} coordinates, got {len(coords)}")
        return tuple(self.ring.coerce(c) for c in coords)

    def _check(self, *xs):
        for x in xs:
            if len(x) != self.rank:
                raise ValueError(f"element {x!r} does not have rank {self.rank}")

    def add(self, x, y):
        self._check(x, y)
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y):
        self._check(x, y)
        return tuple(a - b for a, b in zip(x, y))

    def neg(self, x):
        return tuple(-a for a in x)

    def scale(self, c, x):
        return tuple(c * a for a in x)

    def mul(self, x, y):
        self._check(x, y)
        out = list(self.zero())
        sp = self._sparse
        for i, a in enumerate(x):
            if not a:
                continue
            spi = sp[i]
            for j, b in enumerate(y):
                if not b:
                    continue
                ab = a * b
                for k, c in spi[j]:
                    out[k] = out[k] + ab * c
        return tuple(out)

    def pow(self, x, k: int):
        result = self.one()
        for _ in range(k):
            result = self.mul(result, x)
        return result

    def linear_combination(self, coeffs, elems):
        out = self.zero()
        for c, e in zip(coeffs, elems):
            if c:
                out = self.add(out, self.scale(c, e))
        return out

    # -- matrices and invariants -----------------------------------------

    def mult_matrix(self, x) -> Matrix:
        """Matrix of y -> x*y; column j holds the coordinates of x*theta_j."""
        self._check(x)
        n = self.rank
        M = [[self.ring.zero()] * n for _ in range(n)]
        sp = self._sparse
        for i, a in enumerate(x):
            if not a:
                continue
            for j in range(n):
                for k, c in sp[i][j]:
                    M[k][j] = M[k][j] + a * c
        return Matrix(self.ring, M)

    def basis_matrices(self) -> list:
        got = self.memo.get("basis_matrices")
        if got is None:
            got = [self.mult_matrix(self.basis(i)) for i in range(self.rank)]
            self.memo["basis_matrices"] = got
        return got

    def trace(self, x):
        return self.mult_matrix(x).trace()

    def norm(self, x):
        return det(self.mult_matrix(x))

    def char_poly(self, x) -> list:
        return char_poly(self.mult_matrix(x))

    def s_k(self, x, k: int):
        if not 0 <= k <= self.rank:
            raise ValueError(f"k must lie in 0..{self.rank}, got {k}")
        c = self.char_poly(x)[k]
        return c if k % 2 == 0 else -c

    def coordinate_matrix(self, elems) -> Matrix:
        """Rows are the coordinates of the given elements."""
        return Matrix(self.ring, [list(e) for e in elems])

    # -- validation ------------------------------------------------------

    def check_axioms(self) -> AxiomReport:
        n = self.rank
        rep = AxiomReport()
        st = self.structure
        for i in range(n):
            for j in range(i + 1, n):
                if st[i][j] != st[j][i]:
                    rep.commutative.append((i, j))
        for j in range(n):
            if self.mul(self.unit, self.basis(j)) != self.basis(j):
                rep.unital.append(j)
        prods = [[st[i][j] for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if self.mul(prods[i][j], self.basis(k)) != self.mul(self.basis(i), prods[j][k]):
                        rep.associative.append((i, j, k))
        return rep


def check_axioms(A: FreeAlgebra) -> AxiomReport:
    return A.check_axioms()


def elem_mul(A: FreeAlgebra, x, y):
    return A.mul(x, y)


def mult_matrix(A: FreeAlgebra, x) -> Matrix:
    return A.mult_matrix(x)


def trace(A: FreeAlgebra, x):
    return A.trace(x)


def norm(A: FreeAlgebra, x):
    return A.norm(x)


def s_k(A: FreeAlgebra, x, k: int):
    if not 1 <= k <= A.rank:
        raise ValueError(f"k must lie in 1..{A.rank}, got {k}")
    return A.s_k(x, k)


def disc_bilinear(A: FreeAlgebra, a: Sequence, b: Sequence):
    n = A.rank
    if len(a) != n or len(b) != n:
        raise ValueError(f"need {n}-tuples of elements")
    # Tr(a_i b_j) = sum_k (a_i)_k Tr(theta_k b_j); trace is linear, so use the trace form
    tr = trace_form(A)
    rows = []
    for x in a:
        row = []
        for y in b:
            acc = A.ring.zero()
            for i, xi in enumerate(x):
                if xi:
                    for j, yj in enumerate(y):
                        if yj and tr[i][j]:
                            acc = acc + xi * yj * tr[i][j]
            row.append(acc)
        rows.append(row)
    return det(Matrix(A.ring, rows))


def trace_form(A: FreeAlgebra):
    """Gram matrix Tr(theta_i theta_j)."""
    got = A.memo.get("trace_form")
    if got is None:
        basis_tr = [m.trace() for m in A.basis_matrices()]
        z = A.ring.zero()
        got = []
        for i in range(A.rank):
            row = []
            for j in range(A.rank):
                acc = z
                for k, c in A._sparse[i][j]:
                    acc = acc + c * basis_tr[k]
                row.append(acc)
            got.append(tuple(row))
        got = tuple(got)
        A.memo["trace_form"] = got
    return got


def discriminant(A: FreeAlgebra):
    got = A.memo.get("discriminant")
    if got is None:
        got = det(Matrix(A.ring, trace_form(A)))
        A.memo["discriminant"] = got
    return got


# -- constructions -------------------------------------------------------

def monogenic(ring: Ring, coeffs: Sequence) -> FreeAlgebra:
    """R[X]/(f) for monic f given by its coefficients, highest degree first."""
    coeffs = [ring.coerce(c) for c in coeffs]
    if len(coeffs) < 2:
        raise ValueError("polynomial must have degree at least 1")
    if coeffs[0] != ring.one():
        raise ValueError("polynomial must be monic")
    n = len(coeffs) - 1
    z, o = ring.zero(), ring.one()
    # x^n = -(c_1 x^{n-1} + ... + c_n)
    top = [-coeffs[n - k] for k in range(n)]
    powers = [tuple(o if k == i else z for k in range(n)) for i in range(n)]
    for _ in range(n - 1):
        prev = powers[-1]
        shifted = [z] + list(prev[:-1])
        lead = prev[-1]
        powers.append(tuple(s + lead * t for s, t in zip(shifted, top)))
    structure = [[powers[i + j] for j in range(n)] for i in range(n)]
    return FreeAlgebra(ring, structure, powers[0], validate=False)


def trivial(ring: Ring) -> FreeAlgebra:
    """R itself, as a rank-1 algebra."""
    return FreeAlgebra(ring, [[[ring.one()]]], [ring.one()], validate=False)


def product(*factors: FreeAlgebra) -> FreeAlgebra:
    if not factors:
        raise ValueError("need at least one factor")
    ring = factors[0].ring
    for F in factors:
        if F.ring != ring:
            raise RingError(f"cannot multiply algebras over {ring} and {F.ring}")
    n = sum(F.rank for F in factors)
    z = ring.zero()
    structure = [[[z] * n for _ in range(n)] for _ in range(n)]
    unit = []
    off = 0
    for F in factors:
        m = F.rank
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    structure[off + i][off + j][off + k] = F.structure[i][j][k]
        unit.extend(F.unit)
        off += m
    return FreeAlgebra(ring, structure, unit, validate=False)


def split(ring: Ring, n: int) -> FreeAlgebra:
    return product(*[trivial(ring)] * n)


def square_zero(ring: Ring, n: int) -> FreeAlgebra:
    """R + E with E free of rank n and E*E = 0; basis (1, e_1, ..., e_n)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    z, o = ring.zero(), ring.one()
    r = n + 1

    def vec(k):
        return [o if t == k else z for t in range(r)]

    structure = []
    for i in range(r):
        row = []
        for j in range(r):
            if i == 0:
                row.append(vec(j))
            elif j == 0:
                row.append(vec(i))
            else:
                row.append([z] * r)
        structure.append(row)
    return FreeAlgebra(ring, structure, vec(0), validate=False)


# -- ring homomorphisms and base change ----------------------------------

class RingHom:
    def __init__(self, source: Ring, target: Ring, fn: Callable, name: str = "hom"):
        self.source = source
        self.target = target
        self.fn = fn
        self.name = name

    def __call__(self, x):
        return self.fn(x)

    def __repr__(self):
        return f"RingHom({self.name}: {self.source} -> {self.target})"


def identity_hom(ring: Ring) -> RingHom:
    return RingHom(ring, ring, lambda x: x, "identity")


def canonical_hom(source: Ring, target: Ring) -> RingHom:
    """The structure map ZZ -> R, extended coefficientwise to polynomial rings
    over ZZ with the same variables."""
    if source == target:
        return identity_hom(source)
    if isinstance(source, Integers):
        return RingHom(source, target, target.from_int, "canonical")
    if isinstance(source, PolynomialRing) and isinstance(target, PolynomialRing) \
            and source.variables == target.variables:
        inner = canonical_hom(source.base, target.base)
        return RingHom(source, target,
                       lambda p: target.from_terms({e: inner(c) for e, c in p.terms.items()}),
                       "coefficientwise")
    if isinstance(source, IntegersMod) and isinstance(target, IntegersMod) \
            and source.modulus % target.modulus == 0:
        return RingHom(source, target, lambda x: target.from_int(x.v), "reduction")
    raise RingError(f"no supported homomorphism {source} -> {target}")


def evaluation_hom(source: PolynomialRing, values: Sequence, target: Ring | None = None) -> RingHom:
    """Substitute values (in the base ring, or mapped to ``target``) for the variables."""
    if not isinstance(source, PolynomialRing):
        raise RingError("evaluation needs a polynomial ring")
    if len(values) != source.nvars:
        raise ValueError(f"need {source.nvars} values")
    base = source.base
    vals = tuple(base.coerce(v) for v in values)
    inner = identity_hom(base) if target is None else canonical_hom(base, target)
    tgt = base if target is None else target
    return RingHom(source, tgt, lambda p: inner(p.evaluate(vals)), "evaluation")


def base_change(A: FreeAlgebra, hom: RingHom) -> FreeAlgebra:
    if A.ring != hom.source:
        raise RingError(f"homomorphism source {hom.source} does not match {A.ring}")
    st = [[[hom(c) for c in A.structure[i][j]] for j in range(A.rank)] for i in range(A.rank)]
    return FreeAlgebra(hom.target, st, [hom(c) for c in A.unit], validate=False)


# -- algebra homomorphisms ------------------------------------------------

class AlgebraHomomorphism:
    """R-algebra map determined by the images of the source basis."""

    def __init__(self, source: FreeAlgebra, target: FreeAlgebra, images: Sequence, validate: bool = True):
        if source.ring != target.ring:
            raise RingError("source and target must share the coefficient ring")
        if len(images) != source.rank:
            raise ValueError("need one image per source basis element")
        self.source = source
        self.target = target
        self.images = tuple(target.element(x) for x in images)
        if validate:
            problems = self.check()
            if problems:
                raise AlgebraAxiomError("; ".join(problems))

    def __call__(self, x):
        self.source._check(x)
        return self.target.linear_combination(x, self.images)

    def check(self) -> list:
        problems = []
        if self(self.source.unit) != self.target.unit:
            problems.append("unit is not mapped to the unit")
        n = self.source.rank
        for i in range(n):
            for j in range(i, n):
                lhs = self(self.source.mul(self.source.basis(i), self.source.basis(j)))
                rhs = self.target.mul(self.images[i], self.images[j])
                if lhs != rhs:
                    problems.append(f"not multiplicative on basis pair {(i, j)}")
        return problems

    @classmethod
    def identity(cls, A: FreeAlgebra):
        return cls(A, A, A.basis_elements(), validate=False)


def is_norm_preserving(f: AlgebraHomomorphism, randomized: int = 0, seed: int = 0) -> bool:
    """Compare characteristic polynomials on each theta_i and theta_i + theta_j.

    ``randomized`` adds that many random small-integer combinations of the basis.
    This is a finite check, not a proof of universality.
    """
    A, B = f.source, f.target
    if A.rank != B.rank:
        raise ValueError("source and target ranks differ")
    tests = list(A.basis_elements())
    for i in range(A.rank):
        for j in range(i + 1, A.rank):
            tests.append(A.add(A.basis(i), A.basis(j)))
    rng = random.Random(seed)
    for _ in range(randomized):
        tests.append(A.element([rng.randint(-5, 5) for _ in range(A.rank)]))
    return all(A.char_poly(x) == B.char_poly(f(x)) for x in tests)


# -- JSON ------------------------------------------------------------------

def _algebra_spec(ring: Ring, spec, validate: bool = True) -> FreeAlgebra:
    if not isinstance(spec, dict) or "type" not in spec:
        raise ParseError(f"bad algebra description {spec!r}")
    kind = spec["type"]
    try:
        if kind == "monogenic":
            return monogenic(ring, [_coef(ring, c) for c in spec["poly"]])
        if kind == "table":
            consts = spec["constants"]
            st = [[[_coef(ring, c) for c in cell] for cell in row] for row in consts]
            return FreeAlgebra(ring, st, [_coef(ring, c) for c in spec["unit"]], validate=validate)
        if kind == "product":
            factors = [_algebra_spec(ring, f, validate) for f in spec["factors"]]
            return product(*factors)
        if kind == "square_zero":
            return square_zero(ring, int(spec["rank"]))
        if kind == "split":
            return split(ring, int(spec["rank"]))
    except (KeyError, TypeError) as exc:
        raise ParseError(f"bad {kind} description: {exc}") from exc
    except ValueError as exc:
        if isinstance(exc, AlgebraAxiomError):
            raise
        raise ParseError(str(exc)) from exc
    raise ParseError(f"unknown algebra type {kind!r}")


def _coef(ring: Ring, c):
    if isinstance(c, bool) or not isinstance(c, (int, str)):
        raise ParseError(f"bad coefficient {c!r}")
    return ring.coerce(c)


def algebra_from_json(obj, ring: Ring | None = None, validate: bool = True) -> FreeAlgebra:
    if not isinstance(obj, dict) or "algebra" not in obj:
        raise ParseError("expected an object with an 'algebra' key")
    if ring is None:
        ring = ring_from_json(obj.get("ring", {"kind": "Integers"}))
    return _algebra_spec(ring, obj["algebra"], validate)


def algebra_to_json(A: FreeAlgebra) -> dict:
    def enc(c):
        return element_to_json(A.ring, c)

    return {
        "ring": A.ring.to_json(),
        "algebra": {
            "type": "table",
            "constants": [[[enc(c) for c in cell] for cell in row] for row in A.structure],
            "unit": [enc(c) for c in A.unit],
        },
    }
