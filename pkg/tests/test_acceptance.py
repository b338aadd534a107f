"""Acceptance suite: exact, zero-tolerance checks over seeded instance streams.

Each test carries a ``criterion`` marker; the conftest prints one PASS/FAIL
line per criterion at the end of the run.
"""

import random

import numpy as np
import pytest

import oracles as o
from builders import a2, a4, e, r_e1e2, r_e2e4, tensor
from instances import (diagonal_mutation, fixture_cobrackets, mutated_map, random_r,
                       symmetric_corruption, valid_o_operator)
from mocklie import (Cobracket, RTensor, canonical_solution_from_prelie,
                     check_coboundary_conditions, check_cocycle_compatibility,
                     check_manin_triple, check_matched_pair, check_O_operator,
                     check_ybe_operator_form, coboundary_cobracket, double,
                     dual_representation, e_delta, lift_O_operator, q_action,
                     semidirect_product, validate_bialgebra, validate_mock_lie,
                     validate_representation, yb_bracket)
from mocklie.bialgebra import matched_pair_of_cobracket, standard_manin_triple
from mocklie.bundle import load_bundle
from mocklie.generators import random_algebra, random_prelie, random_representation, random_skew
from mocklie.linalg import identity, is_zero, qarray
from mocklie.representation import coadjoint_rep

criterion = pytest.mark.criterion
PRELIE_SHAPES = [(1, 1, 1), (1, 2, 1), (2, 1, 1), (2, 2, 1), (1, 1, 2), (1, 2, 2)]


def rng_for(number: int) -> random.Random:
    return random.Random(1000 + number)


def bracket_oracle(r: RTensor):
    n = r.algebra.dim
    return qarray(o.yb_bracket(o.lists(r.algebra.structure), o.lists(r.tensor)), (n, n, n))


def skew_r(rng: random.Random) -> RTensor:
    """A skew r on a random algebra, or a lift solution so that positives occur."""
    if rng.random() < 0.3:
        return canonical_solution_from_prelie(random_prelie(*rng.choice(PRELIE_SHAPES), rng)).r
    a = random_algebra(rng, 5)
    return RTensor(a, random_skew(a.dim, rng))


@criterion(1, "fixture soundness")
def test_fixture_soundness():
    a = load_bundle("fixtures/a4.json").algebra()
    assert validate_mock_lie(a.structure).ok
    assert o.is_mock_lie(o.lists(a.structure))
    report = validate_mock_lie(load_bundle("fixtures/idempotent_1.json").structure)
    assert not report.ok
    v = report.first_violation
    assert v.axiom == "jacobi" and v.at == (0, 0, 0)
    assert v.residual.tolist() == [3]
    assert o.jacobiator([[[1]]], [1], [1], [1]) == [3]


@criterion(2, "coboundary cobrackets are 1-cocycles")
def test_coboundary_compatibility(record_property):
    rng = rng_for(2)
    for k in range(200):
        a = random_algebra(rng, 5)
        r = random_r(a, rng)
        d = coboundary_cobracket(r)
        assert check_cocycle_compatibility(d).ok, k
        assert o.lists(d.images) == o.coboundary(o.lists(a.structure), o.lists(r.tensor))
        if k % 4 == 0:
            assert o.is_compatible(o.lists(a.structure), o.lists(d.images))
    record_property("pairs", 200)


@criterion(3, "E_delta(e_i) + Q(e_i)[[r,r]] = 0 for skew r")
def test_e_delta_identity(record_property):
    rng = rng_for(3)
    nonzero = 0
    for k in range(100):
        r = skew_r(rng)
        a = r.algebra
        bracket = yb_bracket(r)
        nonzero += not is_zero(bracket)
        terms = e_delta(coboundary_cobracket(r))
        basis = identity(a.dim)
        for i in range(a.dim):
            assert is_zero(terms[i] + q_action(a, basis[i], bracket)), (k, i)
        if k % 10 == 0:
            c = o.lists(a.structure)
            ref = o.e_delta(o.coboundary(c, o.lists(r.tensor)))
            ob = o.yb_bracket(c, o.lists(r.tensor))
            for i in range(a.dim):
                assert o.is_zero(o.add(ref[i], o.q_action(c, o.basis(a.dim, i), ob)))
    record_property("nonzero_brackets", nonzero)
    assert nonzero > 0


@criterion(4, "coboundary bialgebra iff conditions (i) and (ii)")
def test_coboundary_iff(record_property):
    rng = rng_for(4)
    both = {True: 0, False: 0}
    for k in range(150):
        kind = k % 3
        if kind == 0:
            a = random_algebra(rng, 5)
            r = random_r(a, rng)
        elif kind == 1:
            r = skew_r(rng)
        else:
            # the double's r on a small bialgebra, perturbed half the time
            a = random_algebra(rng, 3)
            dd = double(a, Cobracket.zero(a))
            t = dd.r.tensor.copy()
            if rng.random() < 0.5:
                t += random_r(dd.algebra, rng).tensor
            r = RTensor(dd.algebra, t)
        lhs = validate_bialgebra(coboundary_cobracket(r)).ok
        cond = check_coboundary_conditions(r)
        assert lhs == (cond.cond_i and cond.cond_ii), k
        both[lhs] += 1
    record_property("admissible", both[True])
    record_property("inadmissible", both[False])
    assert both[True] and both[False]


@criterion(5, "A4 worked values")
def test_a4_worked_values():
    c = o.lists(a4().structure)
    r1 = o.lists(r_e1e2().tensor)
    # oracle first: brute-force sums over the component formulas
    d_ref = o.coboundary(c, r1)
    assert d_ref[0] == o.lists(tensor(4, (2, 2, 2)))
    assert d_ref[2] == o.lists(tensor(4, (1, 2, 4), (1, 4, 2)))
    assert o.is_zero(d_ref[1]) and o.is_zero(d_ref[3])
    b_ref = o.yb_bracket(c, r1)
    assert b_ref == o.lists(tensor(4, (3, 2, 2, 2)))
    for i in range(4):
        assert o.is_zero(o.q_action(c, o.basis(4, i), b_ref))
    # the optimized paths must reproduce the oracle
    d = coboundary_cobracket(r_e1e2())
    assert o.lists(d.images) == d_ref
    assert np.array_equal(d(e(4, 1)), tensor(4, (2, 2, 2)))
    assert np.array_equal(d(e(4, 3)), tensor(4, (1, 2, 4), (1, 4, 2)))
    bracket = yb_bracket(r_e1e2())
    assert o.lists(bracket) == b_ref
    for x in identity(4):
        assert is_zero(q_action(a4(), x, bracket))
    assert check_coboundary_conditions(r_e1e2()).classification == "coboundary-only"
    assert o.is_zero(o.yb_bracket(c, o.lists(r_e2e4().tensor)))
    assert check_coboundary_conditions(r_e2e4()).classification == "triangular"


@criterion(6, "tensor and operator forms of the equation agree")
def test_operator_form(record_property):
    rng = rng_for(6)
    solutions = 0
    for k in range(100):
        r = skew_r(rng)
        tensor_ok = is_zero(yb_bracket(r))
        assert tensor_ok == check_ybe_operator_form(r).ok, k
        solutions += tensor_ok
        if k % 10 == 0:
            c = o.lists(r.algebra.structure)
            assert o.operator_form_holds(c, o.lists(r.tensor)) == tensor_ok
            assert o.is_zero(o.yb_bracket(c, o.lists(r.tensor))) == tensor_ok
    record_property("solutions", solutions)
    record_property("non_solutions", 100 - solutions)
    assert 0 < solutions < 100


@criterion(7, "O-operator iff its lift solves the equation")
def test_o_operator_lift(record_property):
    rng = rng_for(7)
    counts = {True: 0, False: 0}
    for k in range(60):
        rep, t = valid_o_operator(rng)
        cases = [t] if t.size == 0 else [t, mutated_map(t, rng)]
        for m in cases:
            is_op = check_O_operator(rep, m).ok
            lift = lift_O_operator(rep, m)
            assert is_op == is_zero(lift.bracket), k
            counts[is_op] += 1
        assert check_O_operator(rep, t).ok
        if k % 12 == 0:
            assert o.lists(lift.bracket) == o.lists(bracket_oracle(lift.r))
    record_property("operators", counts[True])
    record_property("non_operators", counts[False])
    assert counts[False] > 0


@criterion(8, "the double carries a canonical solution")
def test_double(record_property):
    bialgebras = [(label, d) for label, d in fixture_cobrackets() if validate_bialgebra(d).ok]
    assert bialgebras
    for label, d in bialgebras:
        a, n = d.algebra, d.algebra.dim
        dd = double(a, d)
        cond = check_coboundary_conditions(dd.r)
        assert cond.cond_i and cond.cond_ii and cond.ybe, label
        assert is_zero(bracket_oracle(dd.r)), label
        images = dd.cobracket.images
        assert np.array_equal(images[:n, :n, :n], -d.images), label
        assert is_zero(images[:n, n:]) and is_zero(images[:n, :, n:]), label
        assert np.array_equal(images[n:, n:, n:], a.structure.transpose(2, 0, 1)), label
        assert is_zero(images[n:, :n]) and is_zero(images[n:, :, :n]), label
    # A2 double: r12•r13 = e2⊗f1⊗f1, r13•r23 = 0, r12•r23 = e2⊗f1⊗f1
    dd = double(a2(), Cobracket.zero(a2()))
    legs = o.yb_legs(o.lists(dd.algebra.structure), o.lists(dd.r.tensor))
    e2_f1_f1 = o.lists(tensor(4, (1, 2, 3, 3)))
    assert legs[0] == e2_f1_f1 and o.is_zero(legs[1]) and legs[2] == e2_f1_f1
    assert is_zero(yb_bracket(dd.r))
    record_property("bialgebras", len(bialgebras))


@criterion(9, "canonical solutions from mock-pre-Lie algebras")
def test_canonical_solutions():
    rng = rng_for(9)
    for k in range(50):
        p = random_prelie(*PRELIE_SHAPES[k % len(PRELIE_SHAPES)], rng)
        lift = canonical_solution_from_prelie(p)
        assert is_zero(lift.bracket), k
        assert lift.r.is_skew
        if k % 10 == 0:
            assert is_zero(bracket_oracle(lift.r)), k


@criterion(10, "bialgebra, matched pair and Manin triple agree")
def test_three_way(record_property):
    rng = rng_for(10)
    flips = agree = 0
    for label, d in fixture_cobrackets():
        candidates = [(d, False)]
        if d.algebra.dim:
            candidates += [(symmetric_corruption(d, rng), True) for _ in range(3)]
        base = None
        for cand, mutated in candidates:
            bv = validate_bialgebra(cand).ok
            mp = check_matched_pair(matched_pair_of_cobracket(cand)).ok
            mt = check_manin_triple(standard_manin_triple(cand)).ok
            assert bv == mp == mt, label
            assert bv == o.is_bialgebra(o.lists(cand.algebra.structure), o.lists(cand.images))
            agree += 1
            if not mutated:
                base = bv
            elif bv != base:
                flips += 1
    record_property("instances", agree)
    record_property("flipped_by_mutation", flips)
    assert flips > 0


@criterion(11, "dual representations and semidirect products")
def test_dual_and_semidirect(record_property):
    rng = rng_for(11)
    count = 0
    for k in range(100):
        a = random_algebra(rng, 4)
        rep = random_representation(a, rng)
        if rep.module_dim == 0 or a.dim == 0:
            rep = coadjoint_rep(a) if a.dim else rep
        assert validate_representation(a, rep.action).ok, k
        dual = dual_representation(rep)
        assert validate_representation(a, dual.action).ok, k
        if k % 5 == 0:
            assert o.is_representation(o.lists(a.structure),
                                       o.dual_action(o.lists(rep.action)))
        assert validate_mock_lie(semidirect_product(rep).structure).ok, k
        assert validate_mock_lie(semidirect_product(dual).structure).ok, k
        if a.dim and rep.module_dim:
            bad = diagonal_mutation(a, rep.action, rng)
            assert not validate_representation(a, bad).ok, k
            assert not validate_mock_lie(
                o.semidirect(o.lists(a.structure), o.lists(bad))).ok, k
            count += 1
    record_property("mutations_rejected", count)
    assert count > 0
