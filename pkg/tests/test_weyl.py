import json
from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nclaurent.weyl import (WeylOp, divide_by_theta, monomials_up_to,
                            multiply, normal_order, parse)

from helpers import op_on_poly, random_op, monomial_family, word_on_poly


def op1(text):
    return parse(text, 1)


def op2(text):
    return parse(text, 2)


class TestNormalOrder:
    def test_commutation(self):
        assert normal_order(1, [("d", 1), ("x", 1)]) == op1("x1 d1 + 1")

    def test_euler_difference_identity(self):
        # d1 x1 - d2 x2 equals x1 d1 - x2 d2
        lhs = (normal_order(2, [("d", 1), ("x", 1)])
               - normal_order(2, [("d", 2), ("x", 2)]))
        assert lhs == op2("x1 d1 - x2 d2")

    def test_dxx_brute_force(self):
        # oracle: compare the word action and the ordered action on monomials
        word = [("d", 1), ("x", 1), ("x", 1)]
        op = normal_order(1, word)
        assert op == op1("x1^2 d1 + 2 x1")
        for poly in monomial_family(1):
            assert op_on_poly(op, poly) == word_on_poly(word, poly, 1)

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            normal_order(1, [("d", 2)])

    def test_idempotent_on_ordered_input(self):
        op = op2("x1^2 d2 + 3 x2 d1^2")
        # re-normal-ordering every term of an ordered operator is a no-op
        total = WeylOp.zero(2)
        for (alpha, beta), c in op.terms.items():
            w = [("x", i + 1) for i, e in enumerate(alpha) for _ in range(e)]
            w += [("d", i + 1) for i, e in enumerate(beta) for _ in range(e)]
            total = total + normal_order(2, w, c)
        assert total == op


class TestMultiply:
    def test_d_times_x(self):
        assert multiply(WeylOp.d(1, 1), WeylOp.x(1, 1)) == op1("x1 d1 + 1")

    def test_euler_squared_action(self):
        e = multiply(WeylOp.x(1, 1), WeylOp.d(1, 1))
        e2 = multiply(e, e)
        assert e2 == op1("x1^2 d1^2 + x1 d1")
        # acting on t^p must scale by p^2
        for p in range(5):
            poly = {(p,): Fraction(1)}
            assert op_on_poly(e2, poly) == ({(p,): Fraction(p * p)} if p else {})

    def test_identity_neutral(self):
        rng = Random(1)
        P = random_op(rng, 2, 3)
        assert multiply(P, WeylOp.one(2)) == P
        assert multiply(WeylOp.one(2), P) == P

    def test_commutators(self):
        for n in (2, 3):
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    comm = (multiply(WeylOp.d(i, n), WeylOp.x(j, n))
                            - multiply(WeylOp.x(j, n), WeylOp.d(i, n)))
                    expected = WeylOp.one(n) if i == j else WeylOp.zero(n)
                    assert comm == expected

    def test_dimension_mismatch(self):
        with pytest.raises(Exception):
            multiply(WeylOp.x(1, 1), WeylOp.x(1, 2))


@st.composite
def small_ops(draw, n=2, degree=2):
    mons = monomials_up_to(n, degree)
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(mons),
                           max_size=len(mons)))
    op = WeylOp.zero(n)
    for M, c in zip(mons, coeffs):
        if c:
            op = op + M.scale(c)
    return op


class TestRingAxioms:
    @settings(max_examples=25, deadline=None)
    @given(small_ops(), small_ops(), small_ops())
    def test_associativity(self, P, Q, R):
        assert multiply(multiply(P, Q), R) == multiply(P, multiply(Q, R))

    @settings(max_examples=25, deadline=None)
    @given(small_ops(), small_ops(), small_ops())
    def test_distributivity(self, P, Q, R):
        assert multiply(P, Q + R) == multiply(P, Q) + multiply(P, R)

    @settings(max_examples=25, deadline=None)
    @given(small_ops(), small_ops())
    def test_product_matches_composed_action(self, P, Q):
        PQ = multiply(P, Q)
        for poly in monomial_family(2, max_exp=2):
            assert op_on_poly(PQ, poly) == op_on_poly(P, op_on_poly(Q, poly))


class TestTranspose:
    def test_basic(self):
        assert WeylOp.d(1, 1).transpose() == op1("-1 d1")
        assert WeylOp.x(1, 1).transpose() == WeylOp.x(1, 1)
        e = multiply(WeylOp.x(1, 1), WeylOp.d(1, 1))
        assert e.transpose() == op1("-x1 d1 - 1")

    @settings(max_examples=25, deadline=None)
    @given(small_ops())
    def test_involution(self, P):
        assert P.transpose().transpose() == P

    @settings(max_examples=25, deadline=None)
    @given(small_ops(), small_ops())
    def test_anti_automorphism(self, P, Q):
        assert multiply(P, Q).transpose() == \
            multiply(Q.transpose(), P.transpose())


class TestDivideByTheta:
    def test_theta_itself(self):
        theta = multiply(WeylOp.d(1, 1), WeylOp.x(1, 1))
        Q, R = divide_by_theta(theta)
        assert Q == [WeylOp.one(1)]
        assert R.is_zero()

    def test_euler(self):
        Q, R = divide_by_theta(op1("x1 d1"))
        assert Q == [WeylOp.one(1)]
        assert R == op1("-1")

    def test_already_reduced(self):
        P = op2("x1 d2")
        Q, R = divide_by_theta(P)
        assert all(q.is_zero() for q in Q)
        assert R == P

    @pytest.mark.parametrize("n,seed", [(1, 3), (2, 4), (3, 5)])
    def test_reconstruction_random(self, n, seed):
        rng = Random(seed)
        for _ in range(20):
            P = random_op(rng, n, 4)
            Q, R = divide_by_theta(P)
            rebuilt = R
            for i, q in enumerate(Q, start=1):
                theta = multiply(WeylOp.d(i, n), WeylOp.x(i, n))
                rebuilt = rebuilt + multiply(q, theta)
            assert rebuilt == P
            for alpha, beta in R.terms:
                assert all(a * b == 0 for a, b in zip(alpha, beta))


class TestMonomials:
    def test_n1_d1(self):
        assert [str(m) for m in monomials_up_to(1, 1)] == ["1", "x1", "d1"]

    def test_counts(self):
        assert len(monomials_up_to(1, 2)) == 6
        assert len(monomials_up_to(2, 2)) == 15  # C(6, 2)

    def test_unique_and_deterministic(self):
        mons = monomials_up_to(2, 3)
        assert len({str(m) for m in mons}) == len(mons)
        assert [str(m) for m in mons] == [str(m) for m in monomials_up_to(2, 3)]


class TestSerialization:
    def test_json_round_trip(self):
        rng = Random(11)
        for n in (1, 2, 3):
            P = random_op(rng, n, 3)
            data = json.loads(json.dumps(P.to_json()))
            assert WeylOp.from_json(data) == P

    def test_text_round_trip(self):
        rng = Random(12)
        for n in (1, 2):
            for _ in range(10):
                P = random_op(rng, n, 3)
                assert parse(str(P), n) == P

    def test_parse_errors(self):
        with pytest.raises(ValueError):
            parse("x1 &", 1)
        with pytest.raises(IndexError):
            parse("x5", 2)

    def test_canonical_uniqueness(self):
        a = op2("x1 d1 + 1")
        b = normal_order(2, [("d", 1), ("x", 1)])
        assert a == b and a.terms == b.terms
