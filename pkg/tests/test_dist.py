import json
from fractions import Fraction
from random import Random

import pytest

from nclaurent.dist import (Delta, Dist, Pf, apply, equal, is_zero,
                            reflect_atom)
from nclaurent.oracle import (GaussianPoly, TestFunction, pair,
                              pair_gaussian_poly)
from nclaurent.weyl import WeylOp, multiply, parse

from helpers import random_op

ATOM_POOL = [Delta(0), Delta(1), Delta(2), Pf(0, 0, 1), Pf(0, 0, -1),
             Pf(-1, 0, 1), Pf(-1, 0, -1), Pf(-1, 1, 1), Pf(0, 1, 1),
             Pf(-2, 1, -1), Pf(1, 0, 1)]


def atom(a):
    return Dist.from_atoms([a])


class TestActX:
    def test_x_delta(self):
        assert atom(Delta(0)).act_x(1).is_zero()

    def test_x_delta_prime(self):
        assert atom(Delta(1)).act_x(1) == atom(Delta(0)).scale(-1)

    def test_x_inverse_power(self):
        # t * Pf(1/t_+) is the Heaviside function
        assert atom(Pf(-1, 0, 1)).act_x(1) == atom(Pf(0, 0, 1))

    def test_x_reflected(self):
        assert atom(Pf(-1, 0, -1)).act_x(1) == atom(Pf(0, 0, -1)).scale(-1)


class TestActD:
    def test_heaviside(self):
        assert atom(Pf(0, 0, 1)).act_d(1) == atom(Delta(0))

    def test_log(self):
        assert atom(Pf(0, 1, 1)).act_d(1) == atom(Pf(-1, 0, 1))

    def test_inverse_power(self):
        expected = atom(Pf(-2, 0, 1)).scale(-1) - atom(Delta(1))
        assert atom(Pf(-1, 0, 1)).act_d(1) == expected

    def test_delta(self):
        assert atom(Delta(2)).act_d(1) == atom(Delta(3))

    @pytest.mark.parametrize("a", ATOM_POOL)
    def test_duality_against_oracle(self, a):
        # <u', phi> = -<u, phi'> with phi = (1 + t + t^2) e^{-t^2}
        phi = TestFunction.separable([[1, 1, 1]])
        g = GaussianPoly.from_test_function(phi)
        lhs = pair(atom(a).act_d(1), phi)
        rhs = -pair_gaussian_poly(atom(a), g.diff(1))
        assert abs(lhs - rhs) <= 1e-8 * max(1.0, abs(lhs), abs(rhs))


class TestApply:
    def test_x_kills_delta_tensor(self):
        u = Dist.from_atoms([Delta(0), Delta(0)])
        assert apply(WeylOp.x(1, 2), u).is_zero()

    def test_theta_on_inverse_power(self):
        theta = multiply(WeylOp.d(1, 1), WeylOp.x(1, 1))
        assert apply(theta, atom(Pf(-1, 0, 1))) == atom(Delta(0))

    def test_euler_difference_on_delta_tensor(self):
        e = parse("x1 d1 - x2 d2", 2)
        u = Dist.from_atoms([Delta(0), Delta(0)])
        assert apply(e, u).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(Exception):
            apply(WeylOp.x(1, 2), atom(Delta(0)))

    def test_module_axiom_random(self):
        rng = Random(21)
        for _ in range(30):
            n = rng.choice([1, 2, 3])
            u = Dist.from_atoms([rng.choice(ATOM_POOL) for _ in range(n)])
            P = random_op(rng, n, 2)
            Q = random_op(rng, n, 2)
            assert apply(multiply(P, Q), u) == apply(P, apply(Q, u))

    @pytest.mark.parametrize("a", ATOM_POOL)
    def test_commutation_on_atoms(self, a):
        u = atom(a)
        comm = (multiply(WeylOp.d(1, 1), WeylOp.x(1, 1))
                - multiply(WeylOp.x(1, 1), WeylOp.d(1, 1)))
        assert apply(comm, u) == u

    def test_linearity(self):
        u = atom(Pf(-1, 0, 1)) + atom(Delta(1)).scale(3)
        P = parse("x1 d1 + 2", 1)
        assert apply(P, u.scale(Fraction(5, 2))) == \
            apply(P, u).scale(Fraction(5, 2))


class TestEquality:
    def test_x_delta_is_zero(self):
        assert is_zero(atom(Delta(0)).act_x(1))

    def test_reflection_parity(self):
        c, a = reflect_atom(Delta(1))
        assert Dist.from_atoms([a], c) == atom(Delta(1)).scale(-1)

    def test_opposite_supports_differ(self):
        assert not equal(atom(Pf(0, 0, 1)), atom(Pf(0, 0, -1)))

    @pytest.mark.parametrize("a", ATOM_POOL)
    def test_reflection_involution(self, a):
        c1, a1 = reflect_atom(a)
        c2, a2 = reflect_atom(a1)
        assert (c1 * c2, a2) == (Fraction(1), a)


class TestSerialization:
    def test_json_round_trip(self):
        rng = Random(22)
        for _ in range(10):
            n = rng.choice([1, 2, 3])
            u = Dist.zero(n)
            for _ in range(3):
                u = u + Dist.from_atoms(
                    [rng.choice(ATOM_POOL) for _ in range(n)],
                    Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
            data = json.loads(json.dumps(u.to_json()))
            assert Dist.from_json(data) == u

    def test_render(self):
        u = Dist.from_atoms([Delta(0), Delta(0)], 2)
        assert u.render() == "2 d(x1) d(x2)"
        assert u.render(unicode=True) == "2 δ(x1) δ(x2)"
        v = Dist.from_atoms([Pf(-1, 0, 1), Delta(0)])
        assert v.render() == "Pf(x1_+^-1) d(x2)"

    def test_invalid_atoms(self):
        with pytest.raises(ValueError):
            Delta(-1)
        with pytest.raises(ValueError):
            Pf(0, -1, 1)
        with pytest.raises(ValueError):
            Pf(0, 0, 2)
