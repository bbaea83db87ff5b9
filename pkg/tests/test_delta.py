from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest

from discalg.algebra import (
    AlgebraHomomorphism,
    base_change,
    canonical_hom,
    disc_bilinear,
    discriminant,
    monogenic,
    product,
    split,
    square_zero,
    trivial,
)
from discalg.delta import (
    QuadraticAlgebra,
    as_algebra,
    base_factor,
    delta_of_hom,
    discriminant_algebra,
    gamma_alternating,
    involution,
    norm_fast,
    norm_general,
    quad_canonical_Z,
    quad_disc,
    quad_is_split,
    quad_mul,
    quad_norm,
    quad_trace,
    quadratic_from_algebra,
    reduce,
    schur_trace,
    star_product,
)
from discalg.errors import CapExceededError, NotNormPreservingError
from discalg.exactla import det
from discalg.ring import Integers, IntegersMod, NoExactQuotient, Rationals, UnsupportedRingError, parse_ring

from oracles import (
    cubic_closed_form,
    dense_pure,
    disc_from_roots_of_unity,
    perm_sign,
    random_monogenic,
    random_tuple,
    schur_permanent,
)

ZZ = Integers()
QQ = Rationals()


def test_gamma_alternating_examples():
    A = monogenic(ZZ, [1, 2, -1, 5])
    g = gamma_alternating(A, A.basis_elements())
    assert (g.sym, g.c_plus, g.c_minus) == ({}, 1, 0)
    b = A.basis_elements()
    g = gamma_alternating(A, [b[1], b[0], b[2]])
    assert (g.sym, g.c_plus, g.c_minus) == ({}, 0, 1)
    Q2 = monogenic(ZZ, [1, -3, 2])
    g = gamma_alternating(Q2, [Q2.one(), Q2.one()])
    assert (g.sym, g.c_plus, g.c_minus) == ({(2, 0): 1}, 0, 0)


def test_gamma_alternating_matches_dense():
    rng = random.Random(1)
    for A in (random_monogenic(rng, 2), random_monogenic(rng, 3), split(ZZ, 3), product(trivial(ZZ), random_monogenic(rng, 2))):
        n = A.rank
        even = [p for p in permutations(range(n)) if perm_sign(p) > 0]
        for _ in range(4):
            a = random_tuple(rng, A)
            dense = dense_pure(A, a, even)
            g = gamma_alternating(A, a)
            ident = tuple(range(n))
            swap = (1, 0) + tuple(range(2, n))
            assert dense.get(ident, 0) == g.c_plus
            assert dense.get(swap, 0) == g.c_minus
            for idx, c in dense.items():
                alpha = tuple(idx.count(j) for j in range(n))
                if alpha != (1,) * n:
                    assert g.sym.get(alpha, 0) == c
                elif perm_sign(idx) > 0:
                    assert c == g.c_plus
                else:
                    assert c == g.c_minus


def test_reduce_examples():
    A = monogenic(ZZ, [1, 1, 1, 1, 1])
    Q = discriminant_algebra(A)
    assert reduce(A, gamma_alternating(A, A.basis_elements()), Q) == (0, 1)
    sym_only = gamma_alternating(A, [A.one()] * 4)
    assert sym_only.c_plus == sym_only.c_minus == 0
    # twelve even permutations, each giving 1 (x) 1 (x) 1 (x) 1
    assert reduce(A, sym_only, Q) == (12, 0)
    rng = random.Random(2)
    for _ in range(20):
        T, N = rng.randint(-20, 20), rng.randint(-20, 20)
        B = monogenic(ZZ, [1, -T, N])
        u, v = rng.randint(-9, 9), rng.randint(-9, 9)
        assert reduce(B, gamma_alternating(B, [B.one(), B.element([u, v])])) == (u, v)


def test_discriminant_algebra_examples():
    K = monogenic(ZZ, [1, 1, 1, 1, 1])
    Q = discriminant_algebra(K)
    assert (Q.T, Q.N) == (-1, -31)
    R = parse_ring("ZZ[s,t,u]")
    s, t, u = R.gens()
    G = monogenic(R, [1, -s, t, -u])
    for path in ("auto", "fast", "general", "both"):
        Q = discriminant_algebra(G, path=path)
        assert (Q.T, Q.N) == cubic_closed_form(s, t, u)
    for n in range(2, 7):
        Q = discriminant_algebra(split(ZZ, n))
        assert (Q.T, Q.N) == (1, 0)


def test_degenerate_ranks():
    Q = discriminant_algebra(trivial(ZZ))
    assert (Q.T, Q.N) == (1, 0)


def test_paths_agree():
    rng = random.Random(3)
    for n in range(2, 6):
        for _ in range(3):
            A = random_monogenic(rng, n)
            T = discriminant_algebra(A).T
            assert norm_fast(A, T) == norm_general(A, T)
    for A in (square_zero(ZZ, 3), product(random_monogenic(rng, 2), random_monogenic(rng, 2))):
        assert discriminant_algebra(A, path="both") == discriminant_algebra(A, path="fast")


def test_fast_path_refuses_characteristic_two():
    A = base_change(random_monogenic(random.Random(4), 3), canonical_hom(ZZ, IntegersMod(4)))
    with pytest.raises(NoExactQuotient):
        norm_fast(A)
    with pytest.raises(NoExactQuotient):
        discriminant_algebra(A, path="fast")
    assert discriminant_algebra(A).N == norm_general(A)


def test_caps():
    A = monogenic(ZZ, [1] + [0] * 8 + [-1])
    with pytest.raises(CapExceededError):
        norm_general(A)
    assert discriminant_algebra(A, path="fast").T == 81
    B = monogenic(ZZ, [1] + [0] * 12 + [-1])
    with pytest.raises(CapExceededError):
        discriminant_algebra(B)


def test_quadratic_operations():
    Q = QuadraticAlgebra(ZZ, -1, -31)
    g = Q.generator()
    assert involution(Q, g) == (-1, -1)
    assert quad_norm(Q, g) == -31
    assert quad_trace(Q, g) == -1
    assert quad_mul(Q, g, g) == (31, -1)
    assert quad_disc(Q) == 125
    P = QuadraticAlgebra(ZZ, 7, 3)
    assert involution(P, P.generator()) == (7, -1)


def test_quadratic_algebra_round_trip():
    Q = QuadraticAlgebra(ZZ, 5, -2)
    A = as_algebra(Q)
    assert quadratic_from_algebra(A) == Q
    assert discriminant(A) == Q.disc()
    assert discriminant_algebra(A) == Q


def test_quad_is_split():
    assert quad_is_split(QuadraticAlgebra(ZZ, 1, 0))
    assert not quad_is_split(QuadraticAlgebra(QQ, Fraction(-1), Fraction(-31)))
    assert not quad_is_split(QuadraticAlgebra(ZZ, -1, -31))
    cubic = discriminant_algebra(monogenic(QQ, [1, 0, -3, -1]))
    assert (cubic.T, cubic.N) == (-3, -18)
    assert quad_is_split(cubic)
    # the two roots: X^2 + 3X - 18 = (X + 6)(X - 3)
    assert all(x * x - cubic.T * x + cubic.N == 0 for x in (-6, 3))
    assert not quad_is_split(discriminant_algebra(monogenic(QQ, [1, 0, -1, -1])))
    R5 = IntegersMod(5)
    assert quad_is_split(QuadraticAlgebra(R5, R5.from_int(0), R5.from_int(1)))  # X^2 + 1 = (X-2)(X-3)
    assert not quad_is_split(QuadraticAlgebra(R5, R5.from_int(0), R5.from_int(2)))
    with pytest.raises(UnsupportedRingError):
        R = parse_ring("ZZ[s]")
        quad_is_split(QuadraticAlgebra(R, R.one(), R.zero()))


def test_canonical_form_examples():
    assert quad_canonical_Z(QuadraticAlgebra(ZZ, -1, -31)) == QuadraticAlgebra(ZZ, 1, -31)
    assert quad_canonical_Z(QuadraticAlgebra(ZZ, 0, -64)) == QuadraticAlgebra(ZZ, 0, -64)
    assert quad_canonical_Z(QuadraticAlgebra(ZZ, 3, 2)) == QuadraticAlgebra(ZZ, 1, 0)
    rng = random.Random(5)
    for _ in range(50):
        T, N, k = rng.randint(-30, 30), rng.randint(-30, 30), rng.randint(-5, 5)
        # X -> X + k gives an isomorphic presentation
        Q1 = QuadraticAlgebra(ZZ, T, N)
        Q2 = QuadraticAlgebra(ZZ, T + 2 * k, N + k * T + k * k)
        assert quad_canonical_Z(Q1) == quad_canonical_Z(Q2)


def test_star_product_examples():
    rng = random.Random(6)
    unit = QuadraticAlgebra(ZZ, 1, 0)
    for _ in range(5):
        Q = QuadraticAlgebra(ZZ, rng.randint(-9, 9), rng.randint(-9, 9))
        assert quad_canonical_Z(star_product(Q, unit)) == quad_canonical_Z(Q)
        P = QuadraticAlgebra(ZZ, rng.randint(-9, 9), rng.randint(-9, 9))
        assert star_product(Q, P) == star_product(P, Q)
    sq = star_product(QuadraticAlgebra(ZZ, 0, -1), QuadraticAlgebra(ZZ, 0, -1))
    # the discriminant is multiplicative: 4 * 4
    assert sq.disc() == 16


def test_delta_of_hom():
    A = monogenic(ZZ, [1, -4, 3])
    S = split(ZZ, 2)
    f = AlgebraHomomorphism(A, S, [S.one(), S.element([1, 3])])
    df = delta_of_hom(f)
    assert df.image_of_generator == (1, 2)
    QA, QS = discriminant_algebra(A), discriminant_algebra(S)
    one = QA.one()
    assert df(one) == QS.one()
    g = QA.generator()
    # multiplicative on the basis {1, g}
    assert df(QA.mul(g, g)) == QS.mul(df(g), df(g))
    assert df(QA.mul(one, g)) == df(g)
    # the identification a -> gamma(1, a) on the target sends f(x) to the same element
    assert reduce(S, gamma_alternating(S, [S.one(), f(A.basis(1))])) == (1, 2)
    ident = delta_of_hom(AlgebraHomomorphism.identity(A))
    assert ident(QA.element(3, -2)) == (3, -2)
    bad = AlgebraHomomorphism(A, S, [S.one(), S.element([1, 1])])
    with pytest.raises(NotNormPreservingError):
        delta_of_hom(bad)


def test_delta_of_hom_is_multiplicative_randomly():
    rng = random.Random(7)
    for _ in range(10):
        r, s = rng.randint(-6, 6), rng.randint(-6, 6)
        A = monogenic(ZZ, [1, -(r + s), r * s])
        S = split(ZZ, 2)
        f = AlgebraHomomorphism(A, S, [S.one(), S.element([r, s])])
        df = delta_of_hom(f)
        QA, QS = discriminant_algebra(A), discriminant_algebra(S)
        for _ in range(5):
            e1 = QA.element(rng.randint(-5, 5), rng.randint(-5, 5))
            e2 = QA.element(rng.randint(-5, 5), rng.randint(-5, 5))
            assert df(QA.mul(e1, e2)) == QS.mul(df(e1), df(e2))


def _corpus(rng):
    out = [random_monogenic(rng, n) for n in range(2, 7) for _ in range(2)]
    out += [square_zero(ZZ, k) for k in range(1, 5)]
    out += [product(random_monogenic(rng, 2), random_monogenic(rng, 3)), monogenic(ZZ, [1, 1, 1, 1, 1])]
    out += [base_change(random_monogenic(rng, 3), canonical_hom(ZZ, QQ))]
    return out


def test_discriminant_identification():
    for A in _corpus(random.Random(8)):
        assert quad_disc(discriminant_algebra(A)) == discriminant(A)


def test_stickelberger_congruence():
    for A in _corpus(random.Random(9)):
        if A.ring == ZZ:
            assert discriminant(A) % 4 in (0, 1)


def test_pairing_exact_sequence_and_involution():
    rng = random.Random(10)
    for n in (2, 3, 4):
        A = random_monogenic(rng, n)
        Q = discriminant_algebra(A)
        for _ in range(10):
            a, b = random_tuple(rng, A), random_tuple(rng, A)
            ga, gb = reduce(A, gamma_alternating(A, a), Q), reduce(A, gamma_alternating(A, b), Q)
            lhs = Q.mul(Q.sub(ga, Q.involution(ga)), Q.sub(gb, Q.involution(gb)))
            assert lhs == (disc_bilinear(A, a, b), 0)
            assert ga.d == det(A.coordinate_matrix(a))
            assert Q.involution(Q.involution(ga)) == ga
            assert Q.mul(ga, Q.involution(ga)) == (Q.norm(ga), 0)
            assert Q.add(ga, Q.involution(ga)) == (Q.trace(ga), 0)


def test_base_factor():
    rng = random.Random(11)
    for n in range(2, 6):
        A = random_monogenic(rng, n)
        assert discriminant_algebra(base_factor(A)) == discriminant_algebra(A)


def test_product_theorem():
    rng = random.Random(12)
    for m, n in ((2, 2), (2, 3), (3, 3)):
        A, B = random_monogenic(rng, m), random_monogenic(rng, n)
        lhs = discriminant_algebra(product(A, B))
        rhs = star_product(discriminant_algebra(A), discriminant_algebra(B))
        assert quad_canonical_Z(lhs) == quad_canonical_Z(rhs)


def test_base_change_of_delta():
    rng = random.Random(13)
    for m in (2, 3, 4, 5, 12):
        R = IntegersMod(m)
        hom = canonical_hom(ZZ, R)
        for n in (2, 3, 4):
            A = random_monogenic(rng, n)
            Q = discriminant_algebra(A)
            Qm = discriminant_algebra(base_change(A, hom))
            assert (Qm.T, Qm.N) == (hom(Q.T), hom(Q.N))


def test_swap_parity_in_products():
    rng = random.Random(14)
    for m, n in ((3, 3), (2, 3), (2, 2), (1, 3)):
        A, B = random_monogenic(rng, m), random_monogenic(rng, n)
        P = product(A, B)
        Q = discriminant_algebra(P)
        b = P.basis_elements()
        straight = reduce(P, gamma_alternating(P, b), Q)
        swapped = reduce(P, gamma_alternating(P, b[m:] + b[:m]), Q)
        expected = Q.involution(straight) if (m * n) % 2 else straight
        assert swapped == expected
        other = discriminant_algebra(product(B, A))
        assert (other.T, other.N) == (Q.T, Q.N)


def test_schur_traces_against_permanent():
    for n in range(2, 9):
        assert schur_trace(n) == schur_permanent(n)


def test_even_cyclic_closed_form():
    for n in (2, 4, 6, 8):
        A = monogenic(ZZ, [1] + [0] * (n - 1) + [-1])
        D = disc_from_roots_of_unity(n)
        assert discriminant(A) == D
        assert discriminant_algebra(A) == QuadraticAlgebra(ZZ, 0, -D // 4)
