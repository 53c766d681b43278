import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from trichebyshev.approx import ProjectionResult, evaluate_projection, project
from trichebyshev.bernstein import BaryPoint, BBPoly, eval_bbpoly, tri_indices
from trichebyshev.simplex_basis import basis_indices, basis_poly
from trichebyshev.weighted_ip import sample, triangle_rule, weighted_inner_exact

F = Fraction


def random_points(count, seed=0):
    rng = random.Random(seed)
    pts = []
    for _ in range(count):
        a, b = sorted((rng.random(), rng.random()))
        pts.append(BaryPoint(a, b - a, 1 - b))
    return pts


def weighted_norm(f, gamma, nodes=24):
    rule = triangle_rule(float(gamma), nodes)
    vals = sample(f, rule)
    return math.sqrt(rule.integrate(vals * vals))


def test_basis_element_reproduction():
    pr = project(basis_poly(2, 1), 3, 1)
    for lab, c in pr.coefficients.items():
        assert c == pytest.approx(1.0 if lab == (2, 1) else 0.0, abs=1e-10)


def test_constant():
    for n in range(4):
        pr = project(lambda pt: 5.0, n, 1)
        assert pr.coefficients[(0, 0)] == pytest.approx(5.0, abs=1e-12)
        assert pr.residual_norm <= 1e-12
        for pt in random_points(5, n):
            assert evaluate_projection(pr, pt) == pytest.approx(5.0, abs=1e-12)


def test_uv_reproduced_and_matches_exact_coefficients():
    pr = project(lambda pt: pt.u * pt.v, 2, 1)
    assert pr.residual_norm <= 1e-10
    uv = BBPoly.from_monomials({(1, 1, 0): 1})
    for lab in basis_indices(2):
        t = basis_poly(*lab)
        ref = float(weighted_inner_exact(uv, t, 1)) / float(weighted_inner_exact(t, t, 1))
        assert pr.coefficients[lab] == pytest.approx(ref, abs=1e-12)


def test_evaluate_examples():
    pr = project(basis_poly(1, 1), 1, 1)
    assert evaluate_projection(pr, BaryPoint(1, 0, 0)) == pytest.approx(1.0, abs=1e-10)


@pytest.mark.parametrize("n", range(4))
def test_polynomial_reproduction(n):
    pts = random_points(20, seed=n)
    for z in tri_indices(n):
        b = BBPoly.basis(z)
        pr = project(b, n, 1)
        for pt in pts:
            assert evaluate_projection(pr, pt) == pytest.approx(eval_bbpoly(b, pt), abs=1e-9)


FUNCS = {
    "exp_u": lambda pt: math.exp(pt.u),
    "sin_pi_v": lambda pt: math.sin(math.pi * pt.v),
    "uvw": lambda pt: pt.u * pt.v * pt.w,
}


@pytest.mark.parametrize("name", sorted(FUNCS))
def test_residual_monotone_in_degree(name):
    res = [project(FUNCS[name], n, 1, nodes=24).residual_norm for n in range(7)]
    assert all(b <= a + 1e-12 for a, b in zip(res, res[1:]))


@pytest.mark.parametrize("name", sorted(FUNCS))
def test_residual_orthogonal_to_basis(name):
    f = FUNCS[name]
    n, nodes = 4, 24
    pr = project(f, n, 1, nodes=nodes)
    rule = triangle_rule(1.0, nodes)
    fvals = sample(f, rule)
    approx = sum(c * sample(basis_poly(*lab), rule) for lab, c in pr.coefficients.items())
    resid = fvals - approx
    fnorm = weighted_norm(f, 1, nodes)
    for lab in basis_indices(n):
        assert abs(rule.integrate(resid * sample(basis_poly(*lab), rule))) <= 1e-8 * fnorm
    assert pr.residual_norm == pytest.approx(math.sqrt(rule.integrate(resid * resid)), rel=1e-9)


def test_gamma_below_one_rejected():
    with pytest.raises(ValueError):
        project(lambda pt: 1.0, 2, 0.5)


@pytest.mark.parametrize("gamma", [2, 2.5])
def test_non_orthogonal_weights_use_full_gram(gamma):
    b = BBPoly.from_monomials({(2, 0, 1): 1, (0, 1, 0): -2})
    pr = project(b, 3, gamma)
    assert pr.residual_norm <= 1e-10
    for pt in random_points(10):
        assert evaluate_projection(pr, pt) == pytest.approx(eval_bbpoly(b, pt), abs=1e-9)


def test_json_schema_round_trip():
    pr = project(lambda pt: pt.u, 1, 1)
    obj = json.loads(json.dumps(pr.to_json()))
    assert set(obj) == {"degree", "gamma", "coefficients", "residual_norm"}
    assert obj["coefficients"][0].keys() == {"m", "r", "value"}
    assert ProjectionResult.from_json(obj) == pr
