from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

import oracles as o
from builders import a4, e, tensor
from mocklie.errors import ArityMismatch, DimMismatch, Singular
from mocklie.linalg import (apply_factorwise, compose_permutations, cyclic, identity,
                            invert_matrix, invert_permutation, is_zero, nullspace, permute_tensor,
                            qarray, qcombine, qeinsum, rank, rref, switch, to_fraction, zeros)

rationals = st.fractions(min_value=-4, max_value=4, max_denominator=5)


def matrices(rows, cols):
    return st.lists(st.lists(rationals, min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(qarray)


square = st.integers(1, 4).flatmap(lambda n: matrices(n, n))
tensor3 = st.integers(1, 3).flatmap(
    lambda n: st.lists(rationals, min_size=n ** 3, max_size=n ** 3).map(
        lambda xs: qarray(xs, (n, n, n))))


def loop_matmul(a, b):
    return qarray(o.matmul(o.lists(a), o.lists(b)))


class TestScalars:
    def test_strings_and_ints(self):
        assert to_fraction("3/2") == Fraction(3, 2)
        assert to_fraction(" -7 ") == -7
        assert to_fraction(np.int64(5)) == 5

    @pytest.mark.parametrize("bad", [0.5, np.float64(1.0), True, None])
    def test_inexact_rejected(self, bad):
        with pytest.raises(TypeError):
            to_fraction(bad)

    def test_qarray_is_exact(self):
        a = qarray([[1, "1/3"], [0, 2]])
        assert a.dtype == object and a[0, 1] == Fraction(1, 3)
        assert all(isinstance(x, Fraction) for x in a.flat)


class TestInvert:
    def test_identity(self):
        assert np.array_equal(invert_matrix(identity(2)), identity(2))

    def test_two_by_two(self):
        inv = invert_matrix(qarray([[1, 2], [3, 4]]))
        assert np.array_equal(inv, qarray([[-2, 1], ["3/2", "-1/2"]]))
        assert np.array_equal(loop_matmul(qarray([[1, 2], [3, 4]]), inv), identity(2))

    def test_singular_reports_rank(self):
        with pytest.raises(Singular) as info:
            invert_matrix(qarray([[1, 2], [2, 4]]))
        assert info.value.rank == 1 and info.value.size == 2

    @given(square)
    def test_inverse_is_involution(self, m):
        assume(rank(m) == m.shape[0])
        inv = invert_matrix(m)
        assert np.array_equal(loop_matmul(m, inv), identity(m.shape[0]))
        assert np.array_equal(invert_matrix(inv), m)

    @given(square)
    def test_rank_nullity(self, m):
        kernel = nullspace(m)
        assert rank(m) + len(kernel) == m.shape[0]
        for v in kernel:
            assert is_zero(m @ qarray(v))

    def test_rref_pivots(self):
        reduced, pivots = rref(qarray([[2, 4], [1, 3]]))
        assert np.array_equal(reduced, identity(2)) and list(pivots) == [0, 1]


class TestPermutations:
    def test_switch(self):
        assert np.array_equal(switch(tensor(2, (1, 1, 2))), tensor(2, (1, 2, 1)))

    def test_cyclic_moves_factors(self):
        # σ(e1⊗e2⊗e3) = e2⊗e3⊗e1
        assert np.array_equal(cyclic(tensor(3, (1, 1, 2, 3))), tensor(3, (1, 2, 3, 1)))

    @given(tensor3)
    def test_cyclic_has_order_three(self, t):
        assert np.array_equal(cyclic(cyclic(cyclic(t))), t)

    @given(tensor3, st.sampled_from(list(permutations(range(3)))),
           st.sampled_from(list(permutations(range(3)))))
    def test_composition(self, t, p1, p2):
        lhs = permute_tensor(permute_tensor(t, p1), p2)
        assert np.array_equal(lhs, permute_tensor(t, compose_permutations(p2, p1)))

    @given(st.sampled_from(list(permutations(range(4)))))
    def test_inverse_permutation(self, p):
        assert compose_permutations(p, invert_permutation(p)) == tuple(range(4))

    def test_bad_permutation(self):
        with pytest.raises(ArityMismatch):
            permute_tensor(zeros(2, 2), (0, 0))


class TestFactorwise:
    def test_identity_maps(self):
        t = tensor(2, (1, 1, 2), (3, 2, 2))
        assert np.array_equal(apply_factorwise([None, None], t), t)

    def test_left_multiplication_on_first_factor(self):
        left = a4().left(e(4, 1))
        out = apply_factorwise([left, None], tensor(4, (1, 1, 2)))
        assert np.array_equal(out, tensor(4, (1, 2, 2)))

    def test_zero_map(self):
        t = tensor(2, (1, 1, 2), (3, 2, 1))
        assert is_zero(apply_factorwise([zeros(2, 2), None], t))

    def test_arity_and_dimension_checked(self):
        with pytest.raises(ArityMismatch):
            apply_factorwise([None], zeros(2, 2))
        with pytest.raises(DimMismatch):
            apply_factorwise([zeros(3, 3), None], zeros(2, 2))

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(
        matrices(n, n), matrices(n, n), matrices(n, n), matrices(n, n), matrices(n, n))))
    def test_multiplicative(self, ms):
        f, g, f2, g2, t = ms
        lhs = apply_factorwise([f, g], apply_factorwise([f2, g2], t))
        rhs = apply_factorwise([loop_matmul(f, f2), loop_matmul(g, g2)], t)
        assert np.array_equal(lhs, rhs)

    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n))))
    def test_matches_loop_oracle(self, ms):
        f, t = ms
        assert np.array_equal(apply_factorwise([f, None], t),
                              qarray(o.apply_left2(o.lists(f), o.lists(t), 0)))
        assert np.array_equal(apply_factorwise([None, f], t),
                              qarray(o.apply_left2(o.lists(f), o.lists(t), 1)))


class TestContractions:
    @given(st.integers(1, 3).flatmap(lambda n: st.tuples(matrices(n, n), matrices(n, n))))
    def test_qeinsum_is_matmul(self, ms):
        a, b = ms
        assert np.array_equal(qeinsum("ij,jk->ik", a, b), loop_matmul(a, b))

    def test_qcombine_signs_and_denominators(self):
        a = qarray([["1/2", "1/3"]])
        out = qcombine((1, "ij->j", a), (-2, "ij->j", a))
        assert np.array_equal(out, qarray(["-1/2", "-1/3"]))
        assert all(isinstance(x, Fraction) for x in out.flat)

    def test_empty_operands(self):
        out = qeinsum("ij,jk->ik", zeros(0, 2), zeros(2, 3))
        assert out.shape == (0, 3)

    @pytest.mark.parametrize("big", [2 ** 20, 2 ** 31, 2 ** 40, 3 ** 50])
    def test_large_entries_stay_exact(self, big):
        a = qarray([[big, big - 1], [1 - big, big]])
        assert np.array_equal(qeinsum("ij,jk->ik", a, a), loop_matmul(a, a))
        v = qarray([Fraction(big, 7), Fraction(-big, 3)])
        assert qeinsum("i,i->", v, v) == Fraction(big * big, 49) + Fraction(big * big, 9)
