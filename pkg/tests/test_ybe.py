import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as o
from builders import a4, e, hyperbolic_gram, p2, r_e1e2, r_e2e4, skew, tensor
from instances import mutated_map, random_r, valid_o_operator
from mocklie import (BilinearForm, Cobracket, MockLieAlgebra, MockPreLieAlgebra, OOperator,
                     RTensor, adjoint_rep, canonical_solution_from_prelie,
                     check_cocycle_compatibility,
                     check_coboundary_conditions, check_O_operator, check_ybe_operator_form,
                     coboundary_cobracket, double, e_delta, lift_O_operator, q_action, r_as_map,
                     rota_baxter_correspondence, sub_adjacent, validate_bialgebra, yb_bracket)
from mocklie.errors import FormNotAdmissible, NotSkew, ShapeError
from mocklie.generators import random_algebra, random_prelie, random_skew
from mocklie.linalg import identity, is_zero, qarray, rank, zeros
from mocklie.representation import coadjoint_rep, semidirect_product

seeds = st.integers(0, 10 ** 6)
E2_E2_E2 = tensor(4, (1, 2, 2, 2))


def oracle_bracket(r: RTensor):
    n = r.algebra.dim
    return qarray(o.yb_bracket(o.lists(r.algebra.structure), o.lists(r.tensor)), (n, n, n))


class TestRAsMap:
    def test_double_r_is_identity_block(self):
        a2 = MockLieAlgebra.from_products(2, {(0, 0): {1: 1}})
        m, nondegenerate = r_as_map(double(a2, Cobracket.zero(a2)).r)
        assert np.array_equal(m[:2, 2:], identity(2)) and is_zero(m[2:]) and is_zero(m[:, :2])
        assert not nondegenerate

    def test_zero(self):
        m, nondegenerate = r_as_map(RTensor(a4(), zeros(4, 4)))
        assert is_zero(m) and not nondegenerate

    def test_rank_two(self):
        m, nondegenerate = r_as_map(r_e1e2())
        assert rank(m) == 2 and is_zero(m + m.T) and not nondegenerate

    def test_shape_checked(self):
        with pytest.raises(ShapeError):
            RTensor(a4(), zeros(3, 3))


class TestCoboundary:
    def test_a4_e1e2(self):
        d = coboundary_cobracket(r_e1e2())
        assert np.array_equal(d(e(4, 1)), tensor(4, (2, 2, 2)))
        assert is_zero(d(e(4, 2))) and is_zero(d(e(4, 4)))
        assert np.array_equal(d(e(4, 3)), tensor(4, (1, 4, 2), (1, 2, 4)))
        assert o.lists(d.images) == o.coboundary(o.lists(a4().structure),
                                                 o.lists(r_e1e2().tensor))

    def test_abelian(self):
        ab = MockLieAlgebra.abelian(3)
        assert is_zero(coboundary_cobracket(RTensor(ab, random_skew(3, 1))).images)

    def test_annihilator_support(self):
        assert is_zero(coboundary_cobracket(r_e2e4()).images)

    @given(seeds)
    def test_matches_oracle(self, seed):
        rng = random.Random(seed)
        r = random_r(random_algebra(rng, 5), rng)
        assert o.lists(coboundary_cobracket(r).images) == o.coboundary(
            o.lists(r.algebra.structure), o.lists(r.tensor))


class TestEDelta:
    def test_zero(self):
        assert all(is_zero(t) for t in e_delta(Cobracket.zero(a4())))

    def test_a4_coboundary(self):
        assert all(is_zero(t) for t in e_delta(coboundary_cobracket(r_e1e2())))

    def test_a2_idempotent_image(self):
        a2 = MockLieAlgebra.from_products(2, {(0, 0): {1: 1}})
        images = zeros(2, 2, 2)
        images[0, 0, 0] = Fraction(1)
        out = e_delta(Cobracket(a2, images))
        assert np.array_equal(out[0], tensor(2, (3, 1, 1, 1)))
        assert o.e_delta(o.lists(images))[0] == o.lists(out[0])


class TestBracket:
    def test_zero_and_abelian(self):
        assert is_zero(yb_bracket(RTensor(a4(), zeros(4, 4))))
        ab = MockLieAlgebra.abelian(3)
        assert is_zero(yb_bracket(RTensor(ab, random_skew(3, 2))))

    def test_a4_e1e2_legs(self):
        legs = o.yb_legs(o.lists(a4().structure), o.lists(r_e1e2().tensor))
        assert legs[0] == o.lists(E2_E2_E2)
        assert legs[1] == o.lists(E2_E2_E2)
        assert legs[2] == o.lists(-E2_E2_E2)
        assert np.array_equal(yb_bracket(r_e1e2()), 3 * E2_E2_E2)

    def test_a4_e2e4(self):
        assert is_zero(yb_bracket(r_e2e4()))

    @given(seeds)
    def test_matches_leg_oracle(self, seed):
        rng = random.Random(seed)
        r = random_r(random_algebra(rng, 5), rng)
        assert np.array_equal(yb_bracket(r), oracle_bracket(r))


class TestQAction:
    def test_zero(self):
        assert is_zero(q_action(a4(), e(4, 1), zeros(4, 4, 4)))

    def test_kills_e2_cube(self):
        assert is_zero(q_action(a4(), e(4, 1), E2_E2_E2))

    def test_e1_cube(self):
        out = q_action(a4(), e(4, 1), tensor(4, (1, 1, 1, 1)))
        assert np.array_equal(out, tensor(4, (1, 2, 1, 1), (1, 1, 2, 1), (1, 1, 1, 2)))
        assert o.lists(out) == o.q_action(o.lists(a4().structure), o.basis(4, 0),
                                          o.lists(tensor(4, (1, 1, 1, 1))))


class TestConditions:
    def test_triangular(self):
        report = check_coboundary_conditions(r_e2e4())
        assert (report.cond_i, report.cond_ii, report.ybe, report.skew) == (True,) * 4
        assert report.classification == "triangular"

    def test_coboundary_only(self):
        report = check_coboundary_conditions(r_e1e2())
        assert report.cond_i and report.cond_ii and not report.ybe
        assert report.classification == "coboundary-only"
        for i in range(4):
            assert o.is_zero(o.q_action(o.lists(a4().structure), o.basis(4, i),
                                        o.yb_bracket(o.lists(a4().structure),
                                                     o.lists(r_e1e2().tensor))))

    @pytest.mark.parametrize("seed", range(5))
    def test_abelian(self, seed):
        ab = MockLieAlgebra.abelian(3)
        from mocklie.generators import random_matrix
        report = check_coboundary_conditions(RTensor(ab, random_matrix(3, 3, seed)))
        assert report.cond_i and report.cond_ii and report.ybe

    def test_non_admissible(self):
        a2 = MockLieAlgebra.from_products(2, {(0, 0): {1: 1}})
        report = check_coboundary_conditions(RTensor(a2, tensor(2, (1, 1, 1))))
        assert not report.cond_i and report.classification == "not-coboundary-admissible"

    @given(seeds)
    def test_coboundaries_are_always_compatible(self, seed):
        rng = random.Random(seed)
        d = coboundary_cobracket(random_r(random_algebra(rng, 5), rng))
        assert check_cocycle_compatibility(d).ok

    @given(seeds)
    def test_dual_jacobi_identity(self, seed):
        rng = random.Random(seed)
        a = random_algebra(rng, 5)
        r = RTensor(a, random_skew(a.dim, rng))
        ed = e_delta(coboundary_cobracket(r))
        bracket = yb_bracket(r)
        for i in range(a.dim):
            assert is_zero(ed[i] + q_action(a, identity(a.dim)[i], bracket))

    @given(seeds)
    def test_bialgebra_iff_conditions(self, seed):
        rng = random.Random(seed)
        r = random_r(random_algebra(rng, 5), rng)
        report = check_coboundary_conditions(r)
        assert validate_bialgebra(coboundary_cobracket(r)).ok == (report.cond_i
                                                                  and report.cond_ii)


class TestOperatorForm:
    def test_triangular(self):
        assert check_ybe_operator_form(r_e2e4()).ok
        assert o.operator_form_holds(o.lists(a4().structure), o.lists(r_e2e4().tensor))

    def test_fails_with_bracket(self):
        assert not check_ybe_operator_form(r_e1e2()).ok
        assert not is_zero(yb_bracket(r_e1e2()))

    def test_symmetric_rejected(self):
        with pytest.raises(NotSkew):
            check_ybe_operator_form(RTensor(a4(), tensor(4, (1, 1, 2), (1, 2, 1))))

    @given(seeds)
    def test_agrees_with_tensor_form(self, seed):
        rng = random.Random(seed)
        a = random_algebra(rng, 5)
        r = RTensor(a, random_skew(a.dim, rng))
        flag = check_ybe_operator_form(r).ok
        assert flag == is_zero(yb_bracket(r))
        assert flag == o.operator_form_holds(o.lists(a.structure), o.lists(r.tensor))


class TestRotaBaxterCorrespondence:
    def test_abelian(self):
        ab = MockLieAlgebra.abelian(2)
        w = BilinearForm(ab, identity(2))
        corr = rota_baxter_correspondence(RTensor(ab, skew(2, 1, 2)), w)
        assert corr.ybe and corr.rota_baxter and corr.agree

    def test_a4_triangular(self):
        corr = rota_baxter_correspondence(r_e2e4(), BilinearForm(a4(), hyperbolic_gram()))
        assert corr.ybe and corr.rota_baxter and corr.agree

    def test_a4_non_solution(self):
        corr = rota_baxter_correspondence(r_e1e2(), BilinearForm(a4(), hyperbolic_gram()))
        assert not corr.ybe and not corr.rota_baxter and corr.agree

    def test_inadmissible_form(self):
        with pytest.raises(FormNotAdmissible):
            rota_baxter_correspondence(r_e2e4(), BilinearForm(a4(), identity(4)))


class TestLift:
    def test_zero(self):
        lift = lift_O_operator(adjoint_rep(a4()), zeros(4, 4))
        assert is_zero(lift.r.tensor) and is_zero(lift.bracket)
        assert check_O_operator(adjoint_rep(a4()), zeros(4, 4)).ok

    def test_identity_on_p2(self):
        _, theta = sub_adjacent(p2())
        lift = lift_O_operator(theta, identity(2))
        assert lift.algebra.dim == 4 and lift.r.is_skew
        expected = tensor(4, (1, 1, 3), (1, 2, 4), (-1, 3, 1), (-1, 4, 2))
        assert np.array_equal(lift.r.tensor, expected)
        assert is_zero(lift.bracket) and is_zero(oracle_bracket(lift.r))

    def test_accepts_o_operator(self):
        _, theta = sub_adjacent(p2())
        from_op = lift_O_operator(OOperator(theta, identity(2)))
        assert from_op.r == lift_O_operator(theta, identity(2)).r

    def test_non_operator(self):
        t = zeros(4, 4)
        t[0, 1] = Fraction(1)
        lift = lift_O_operator(adjoint_rep(a4()), t)
        assert not is_zero(lift.bracket)
        assert not is_zero(oracle_bracket(lift.r))

    def test_lift_algebra(self):
        lift = lift_O_operator(adjoint_rep(a4()), zeros(4, 4))
        assert lift.algebra == semidirect_product(coadjoint_rep(a4()),
                                                  [f"v{i}*" for i in range(1, 5)])

    @given(seeds)
    def test_o_operator_iff_lift_solves(self, seed):
        rng = random.Random(seed)
        rep, t = valid_o_operator(rng)
        for cand in (t, mutated_map(t, rng)) if t.size else (t,):
            flag = check_O_operator(rep, cand).ok
            lift = lift_O_operator(rep, cand)
            assert flag == is_zero(lift.bracket)
            assert flag == check_ybe_operator_form(lift.r).ok


class TestCanonicalSolution:
    def test_p2(self):
        lift = canonical_solution_from_prelie(p2())
        assert lift.algebra.dim == 4 and lift.r.is_skew and is_zero(lift.bracket)

    def test_zero_product(self):
        lift = canonical_solution_from_prelie(MockPreLieAlgebra(zeros(2, 2, 2)))
        assert is_zero(lift.algebra.structure) and lift.r.is_skew and is_zero(lift.bracket)

    @given(seeds, st.sampled_from([(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1)]))
    def test_random(self, seed, shape):
        lift = canonical_solution_from_prelie(random_prelie(*shape, seed))
        assert is_zero(lift.bracket) and is_zero(oracle_bracket(lift.r))
