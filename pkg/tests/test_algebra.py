from fractions import Fraction

import pytest

from nilorbit import linalg as la
from nilorbit.algebra import (
    LieAlgebra,
    Subspace,
    algebra_from_json,
    algebra_to_json,
    build_n_m,
    center,
    flag_basis,
    format_scalar,
    parse_scalar,
    validate,
)
from nilorbit.errors import DimensionMismatch, FormatError, NilorbitError, NotNilpotent

from conftest import rand_vec
from oracles import brute_jacobi, matrix_commutator


def abelian(d):
    return LieAlgebra.from_brackets("ab", [f"e{i}" for i in range(d)], {})


def broken_n3():
    # [x,z] = x breaks Jacobi
    return LieAlgebra.from_brackets("broken", ["x", "y", "z"], {(0, 1): {2: 1}, (0, 2): {0: 1}})


class TestScalars:
    def test_parse_forms(self):
        assert parse_scalar("3/6") == Fraction(1, 2)
        assert parse_scalar("-4") == -4
        assert parse_scalar(7) == 7

    @pytest.mark.parametrize("bad", ["1/0", "x", "1.5", "", "2/-3"])
    def test_parse_rejects(self, bad):
        with pytest.raises(FormatError):
            parse_scalar(bad)

    def test_lowest_terms(self):
        c = parse_scalar("-6/4")
        assert (c.numerator, c.denominator) == (-3, 2)
        assert format_scalar(c) == "-3/2"
        assert format_scalar(Fraction(5)) == "5"


class TestValidate:
    def test_n3_valid_class_2(self, n3):
        rep = validate(n3)
        assert rep.ok and rep.nilpotency_class == 2

    def test_abelian_class_1(self):
        rep = validate(abelian(4))
        assert rep.ok and rep.nilpotency_class == 1

    def test_broken_jacobi_names_xyz(self):
        rep = validate(broken_n3())
        jac = rep.violated("jacobi")
        assert jac and jac[0].triple == ("x", "y", "z")
        assert rep.nilpotency_class is None

    def test_broken_jacobi_by_brute_force(self):
        alg = broken_n3()
        e = alg.e
        assert not la.is_zero(brute_jacobi(alg, e(0), e(1), e(2)))

    def test_grading_violation(self):
        alg = LieAlgebra.from_brackets("g", ["x", "a"], {(0, 0): {}, (0, 1): {0: 1}}, [0, 1])
        assert validate(alg).violated("grading")

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_families_valid(self, m):
        assert validate(build_n_m(m)).ok


class TestBracket:
    def test_n3_xy_is_z(self, n3):
        assert n3.bracket(n3.e(0), n3.e(1)) == n3.e(2)
        assert n3.bracket(n3.e(1), n3.e(0)) == la.scale(-1, n3.e(2))

    def test_self_bracket_zero(self, n4, rng):
        u = rand_vec(rng, n4.dim)
        assert la.is_zero(n4.bracket(u, u))

    def test_n4_E12_E23(self, n4):
        assert n4.basis == ("E12", "E23", "E34", "E13", "E24", "E14")
        assert n4.bracket(n4.e(0), n4.e(1)) == n4.e(3)

    def test_dimension_mismatch(self, n3):
        with pytest.raises(DimensionMismatch):
            n3.bracket((1, 0), (0, 1, 0))

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
    def test_matches_matrix_commutator(self, m, rng):
        alg = build_n_m(m)
        for _ in range(20):
            u, v = rand_vec(rng, alg.dim), rand_vec(rng, alg.dim)
            assert alg.bracket(u, v) == matrix_commutator(alg, u, v, m)

    def test_jacobi_brute_force_200_triples(self, rng):
        for m in (3, 4, 5):
            alg = build_n_m(m)
            for _ in range(200 // 3 + 1):
                a, b, c = (rand_vec(rng, alg.dim) for _ in range(3))
                assert la.is_zero(brute_jacobi(alg, a, b, c))


class TestSeries:
    def test_lcs_dims(self, n3, n4):
        assert [t.dim for t in n3.lower_central_series] == [3, 1, 0]
        assert [t.dim for t in n4.lower_central_series] == [6, 3, 1, 0]
        assert [t.dim for t in abelian(5).lower_central_series] == [5, 0]

    def test_lcs_descends(self):
        for m in (3, 4, 5, 6):
            alg = build_n_m(m)
            terms = alg.lower_central_series
            for a, b in zip(terms, terms[1:]):
                for i in range(alg.dim):
                    for r in a.rows:
                        assert alg.bracket(alg.e(i), r) in b
                assert a.is_ideal()

    def test_non_nilpotent_flagged(self):
        alg = broken_n3()
        dims = [t.dim for t in alg.lower_central_series]
        assert dims[-1] != 0 and not alg.is_nilpotent

    def test_center(self, n3, n4):
        assert center(n3) == Subspace.of_basis(n3, [2])
        assert center(n4) == Subspace.of_basis(n4, [5])
        assert center(abelian(3)) == abelian(3).whole()

    def test_flag_basis_refuses_non_nilpotent(self):
        with pytest.raises(NotNilpotent):
            flag_basis(broken_n3())


class TestBuilders:
    def test_n2_abelian_dim_1(self):
        g = build_n_m(2)
        assert g.dim == 1 and not g.table

    def test_n3_single_bracket(self, n3):
        assert {k for k in n3.table if k[0] <= k[1]} == {(0, 1)}
        assert n3.table[(0, 1)] == {2: 1}

    @pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
    def test_dims_and_class(self, m):
        g = build_n_m(m)
        assert g.dim == m * (m - 1) // 2
        assert g.nilpotency_class == max(m - 1, 1)

    def test_rejects_small(self):
        with pytest.raises(NilorbitError):
            build_n_m(1)

    def test_wide_names(self):
        assert build_n_m(10).basis[0] == "E1,2"


class TestSubspace:
    def test_canonical_rows(self, n3):
        a = Subspace.span(n3, [(1, 1, 0), (0, 2, 0)])
        b = Subspace.span(n3, [(3, 0, 0), (1, -1, 0)])
        assert a.rows == b.rows and a == b

    def test_subalgebra_examples(self, n3, n4):
        assert Subspace.of_basis(n3, [1, 2]).is_subalgebra
        assert n4.whole().is_subalgebra
        assert not Subspace.of_basis(n4, [0, 1]).is_subalgebra

    def test_intersect_and_sum(self, n4):
        a = Subspace.of_basis(n4, [0, 1, 3])
        b = Subspace.of_basis(n4, [1, 2, 3])
        assert a.intersect(b) == Subspace.of_basis(n4, [1, 3])
        assert (a + b).dim == 4

    def test_complement_lexicographic(self, n3):
        assert Subspace.of_basis(n3, [1, 2]).complement_indices() == [0]
        assert Subspace.span(n3, [(1, 1, 0), (0, 0, 1)]).complement_indices() == [0]


class TestJson:
    def test_round_trip(self, n4, sh):
        for alg in (n4, sh):
            again = algebra_from_json(algebra_to_json(alg))
            assert again.table == alg.table and again.parity == alg.parity and again.basis == alg.basis

    def test_odd_symmetric_completion(self):
        alg = algebra_from_json({"dim": 3, "parity": [0, 1, 1],
                                 "brackets": [{"i": 1, "j": 2, "coeffs": {"0": "1"}}]})
        assert alg.bracket_basis(2, 1) == alg.bracket_basis(1, 2) == (1, 0, 0)

    @pytest.mark.parametrize("bad", [
        {"dim": 2, "basis": ["x"]},
        {"dim": 2, "brackets": [{"i": 1, "j": 0, "coeffs": {"0": "1"}}]},
        {"dim": 2, "brackets": [{"i": 0, "j": 1, "coeffs": {"5": "1"}}]},
        {"dim": 2, "parity": [0, 2]},
        {"basis": ["x"]},
    ])
    def test_malformed(self, bad):
        with pytest.raises(FormatError):
            algebra_from_json(bad)
