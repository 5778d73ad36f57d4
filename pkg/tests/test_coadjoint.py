from fractions import Fraction

import pytest

from nilorbit import linalg as la
from nilorbit.algebra import LieAlgebra, Subspace, build_n_m
from nilorbit.coadjoint import (
    Functional,
    coadjoint_act,
    darboux_basis,
    exp_ad,
    functional_from_json,
    functional_to_json,
    gram_matrix,
    orbit_dim,
    orbit_sample,
    radical,
    symplectic_block,
    weight,
)
from nilorbit.errors import FormatError, NotNilpotent
from nilorbit.polarisation import vergne_polarisation

from conftest import rand_functional, rand_vec

F = Fraction


def zstar(n3, c=1):
    return Functional.dual(n3, 2, c)


class TestGram:
    def test_n3_zstar(self, n3):
        assert gram_matrix(zstar(n3)).rows() == [[0, 1, 0], [-1, 0, 0], [0, 0, 0]]

    def test_zero_functional(self, n4):
        g = gram_matrix(Functional.zero(n4))
        assert g.rank == 0

    def test_n4_E14_pairs(self, n4):
        m = gram_matrix(Functional.dual(n4, 5)).rows()
        e12, e23, e34, e13, e24, e14 = range(6)
        nonzero = {(i, j) for i in range(6) for j in range(6) if m[i][j]}
        assert nonzero == {(e12, e24), (e24, e12), (e13, e34), (e34, e13)}
        assert m[e12][e24] == 1 and m[e13][e34] == 1
        # two hyperbolic pairs, so the rank is 4 and the radical has dimension 2
        assert la.rank(m) == 4

    def test_refuses_non_nilpotent(self):
        alg = LieAlgebra.from_brackets("b", ["x", "y"], {(0, 1): {1: 1}})
        with pytest.raises(NotNilpotent):
            gram_matrix(Functional.dual(alg, 1))


class TestRadical:
    def test_n3(self, n3):
        assert radical(zstar(n3)) == Subspace.of_basis(n3, [2])

    def test_zero_whole(self, n4):
        assert radical(Functional.zero(n4)) == n4.whole()

    def test_n4_E14(self, n4):
        r = radical(Functional.dual(n4, 5))
        assert r.dim == 2 and n4.e(5) in r

    def test_is_kernel_and_subalgebra(self, rng):
        for m in (3, 4, 5):
            alg = build_n_m(m)
            for _ in range(20):
                f = rand_functional(alg, rng)
                r = radical(f)
                assert r.is_subalgebra
                for row in r.rows:
                    assert all(f.form(row, alg.e(j)) == 0 for j in range(alg.dim))
                assert r.dim == alg.dim - gram_matrix(f).rank


class TestOrbitDim:
    def test_n3(self, n3):
        assert orbit_dim(zstar(n3)) == 2
        assert weight(zstar(n3)) == 1
        assert orbit_dim(Functional(n3, (F(3), F(-1), F(0)))) == 0

    def test_n5_generic(self, rng):
        assert orbit_dim(rand_functional(build_n_m(5), rng)) == 8

    def test_n4_generic_weight(self, n4, rng):
        assert weight(rand_functional(n4, rng)) == 2

    @pytest.mark.parametrize("m", [3, 4, 5, 6])
    def test_rank_even(self, m, rng):
        alg = build_n_m(m)
        for _ in range(500 if m <= 4 else 100):
            f = rand_functional(alg, rng) if rng.random() < 0.5 else Functional(
                alg, tuple(c if rng.random() < 0.4 else F(0) for c in rand_vec(rng, alg.dim)))
            assert gram_matrix(f).rank % 2 == 0

    def test_weight_matches_polarisation(self, rng):
        for m in (3, 4, 5):
            alg = build_n_m(m)
            for _ in range(10):
                f = rand_functional(alg, rng)
                assert weight(f) == alg.dim - vergne_polarisation(f).dim


class TestExp:
    def test_zero_is_identity(self, n4):
        assert exp_ad(n4, n4.zero().rows or la.zeros(6)) == la.identity(6)

    def test_n3_E12(self, n3):
        e = exp_ad(n3, n3.e(0))
        ad = n3.ad(n3.e(0))
        assert e == [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(la.identity(3), ad)]

    def test_n4_terminates_at_degree_two(self, n4):
        x = la.add(n4.e(0), n4.e(1))
        ad = n4.ad(x)
        sq = la.matmul(ad, ad)
        assert all(c == 0 for row in la.matmul(sq, ad) for c in row)
        expect = [[i + a + b / 2 for i, a, b in zip(r0, r1, r2)] for r0, r1, r2 in zip(la.identity(6), ad, sq)]
        assert exp_ad(n4, x) == expect

    def test_invertible(self, n4, rng):
        x = rand_vec(rng, 6)
        assert la.matmul(exp_ad(n4, x), exp_ad(n4, la.scale(-1, x))) == la.identity(6)


class TestAction:
    def test_zero_fixes(self, n4, rng):
        f = rand_functional(n4, rng)
        assert coadjoint_act(la.zeros(6), f) == f

    @pytest.mark.parametrize("s", [F(1), F(-2), F(3, 7)])
    def test_n3_shift(self, n3, s):
        out = coadjoint_act(la.scale(s, n3.e(0)), zstar(n3))
        assert out.coords == (0, -s, 1)

    def test_n3_xstar_fixed(self, n3, rng):
        f = Functional.dual(n3, 0)
        for _ in range(10):
            assert coadjoint_act(rand_vec(rng, 3), f) == f

    def test_group_inverse(self, rng):
        for m in (3, 4, 5):
            alg = build_n_m(m)
            for _ in range(30):
                x, f = rand_vec(rng, alg.dim), rand_functional(alg, rng)
                assert coadjoint_act(x, coadjoint_act(la.scale(-1, x), f)) == f

    def test_definition(self, n4, rng):
        # (exp(x).f)(y) = f(exp(-ad x) y)
        x, f, y = rand_vec(rng, 6), rand_functional(n4, rng), rand_vec(rng, 6)
        assert coadjoint_act(x, f)(y) == f(la.matvec(exp_ad(n4, la.scale(-1, x)), y))

    def test_orbit_sample(self, n3):
        assert orbit_sample(zstar(n3), []) == zstar(n3)
        for s, t in [(1, 2), (F(-1, 2), 3), (0, F(5, 3))]:
            out = orbit_sample(zstar(n3), [(0, s), (1, t)])
            assert out.coords == (t, -s, 1)

    def test_orbit_sample_keeps_rank(self, n4, rng):
        for _ in range(100):
            f = rand_functional(n4, rng)
            params = [(rng.randrange(6), str(rng.randint(-5, 5))) for _ in range(3)]
            assert orbit_dim(orbit_sample(f, params)) == orbit_dim(f)

    def test_orbit_sample_bad_index(self, n3):
        with pytest.raises(FormatError):
            orbit_sample(zstar(n3), [(7, 1)])


class TestDarboux:
    def test_n3(self, n3):
        db = darboux_basis(zstar(n3))
        assert db.pairs == ((n3.e(0), n3.e(1)),)
        assert Subspace.span(n3, db.kernel) == Subspace.of_basis(n3, [2])

    def test_zero(self, n4):
        db = darboux_basis(Functional.zero(n4))
        assert db.n == 0 and Subspace.span(n4, db.kernel) == n4.whole()

    @pytest.mark.parametrize("m", [3, 4, 5])
    def test_transformed_gram(self, m, rng):
        alg = build_n_m(m)
        for _ in range(15):
            f = rand_functional(alg, rng)
            db = darboux_basis(f)
            p = db.change_of_basis()
            got = la.matmul(la.matmul(la.transpose(p), gram_matrix(f).rows()), p)
            assert got == symplectic_block(db.n, alg.dim)
            assert db.n == weight(f)
            assert la.rank(la.transpose(p)) == alg.dim
            assert Subspace.span(alg, db.kernel) == radical(f)


class TestJson:
    def test_round_trip(self, n4, rng):
        f = rand_functional(n4, rng)
        assert functional_from_json(n4, functional_to_json(f)) == f

    def test_malformed(self, n3):
        with pytest.raises(FormatError):
            functional_from_json(n3, {"x": 1})
        with pytest.raises(FormatError):
            functional_from_json(n3, {"coords": {"9": "1"}})
