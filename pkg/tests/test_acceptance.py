"""Exit criteria for the package, one test per criterion.

Every tolerance below is fixed; exact criteria use no tolerance at all.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from trichebyshev.approx import evaluate_projection, project
from trichebyshev.bernstein import BaryPoint, BBPoly, eval_bbpoly, lattice_points, tri_indices
from trichebyshev.chebyshev import M_coeffs, cheb_eval, elevate_univariate
from trichebyshev.combinatorics import check_half_binomial_identity
from trichebyshev.simplex_basis import basis_indices, basis_poly, coeffs_closed_form, coeffs_recursive, eval_factored
from trichebyshev.weighted_ip import gram_matrix, q_moment, weighted_inner_exact, weighted_inner_quadrature

F = Fraction


def test_criterion_01_exact_orthogonality(record_criterion):
    start = time.perf_counter()
    nonzero = {}
    for gamma in (1, 2, 3):
        gm = gram_matrix(6, gamma, "exact")
        assert len(gm.labels) == 28
        nonzero[gamma] = gm.off_diagonal_nonzero()
    elapsed = time.perf_counter() - start
    passed = not any(nonzero.values()) and elapsed < 60
    counts = ", ".join(f"gamma={g}: {len(v)} nonzero" for g, v in nonzero.items())
    record_criterion(1, passed, f"28x28 exact Gram, n<=6 ({counts}; {elapsed:.1f}s)")
    for gamma, bad in nonzero.items():
        assert not bad, f"gamma={gamma}: off-diagonal nonzero at {bad[:5]}"
    assert elapsed < 60


def test_criterion_02_closed_form_equals_recursion(record_criterion):
    start = time.perf_counter()
    pairs = [(n, r) for n in range(11) for r in range(n + 1)]
    assert len(pairs) == 66
    mismatched = [(n, r) for n, r in pairs if coeffs_closed_form(n, r).bb != coeffs_recursive(n, r).bb]
    elapsed = time.perf_counter() - start
    record_criterion(
        2, not mismatched and elapsed < 5,
        f"{66 - len(mismatched)}/66 polynomials agree; first mismatches {mismatched[:4]} ({elapsed:.2f}s)",
    )
    assert not mismatched
    assert elapsed < 5


def test_criterion_03_representation_consistency(record_criterion):
    start = time.perf_counter()
    points = lattice_points(4)
    assert len(points) == 15
    bad = []
    for n, r in basis_indices(8):
        bb = basis_poly(n, r)
        bad += [(n, r) for pt in points if eval_bbpoly(bb, pt) != eval_factored(n, r, pt)]
    elapsed = time.perf_counter() - start
    record_criterion(3, not bad and elapsed < 30, f"45 polynomials x 15 rational points, {len(bad)} mismatches ({elapsed:.2f}s)")
    assert not bad
    assert elapsed < 30


def test_criterion_04_q_moments(record_criterion):
    start = time.perf_counter()
    cases = [(n, r, i) for n in range(11) for r in range(n + 1) for i in range(n - r)]
    bad = [c for c in cases if q_moment(*c) != 0]
    elapsed = time.perf_counter() - start
    record_criterion(4, not bad and elapsed < 5, f"{len(cases)} moments, {len(bad)} nonzero ({elapsed:.2f}s)")
    assert not bad
    assert elapsed < 5


def test_criterion_05_half_binomial_identity(record_criterion):
    start = time.perf_counter()
    bad = [(n, k) for n in range(21) for k in range(n + 1) if not check_half_binomial_identity(n, k)]
    elapsed = time.perf_counter() - start
    record_criterion(5, not bad and elapsed < 1, f"231 cases, {len(bad)} failures ({elapsed:.3f}s)")
    assert not bad
    assert elapsed < 1


def test_criterion_06_univariate_consistency(record_criterion):
    xs = [F(i, 10) for i in range(11)]
    bad_values = [
        (n, r) for r in range(11) for n in range(r, r + 5)
        if any(M_coeffs(n, r)(x) != cheb_eval(r, x) for x in xs)
    ]
    bad_elev = [
        (n, r) for r in range(11) for n in range(r, r + 5)
        if elevate_univariate(M_coeffs(n, r).values) != M_coeffs(n + 1, r).values
    ]
    record_criterion(6, not bad_values and not bad_elev, f"value mismatches {len(bad_values)}, elevation mismatches {len(bad_elev)}")
    assert not bad_values and not bad_elev


def test_criterion_07_oracle_quadrature_agreement(record_criterion):
    labels = basis_indices(5)
    worst = 0.0
    for x, a in enumerate(labels):
        for b in labels[x:]:
            pa, pb = basis_poly(*a), basis_poly(*b)
            exact = float(weighted_inner_exact(pa, pb, 1))
            worst = max(worst, abs(weighted_inner_quadrature(pa, pb, 1, 12) - exact))
    record_criterion(7, worst <= 1e-11, f"max |quadrature - exact| = {worst:.2e} over 231 pairs (tol 1e-11)")
    assert worst <= 1e-11


def test_criterion_08_negative_control(record_criterion):
    gm = gram_matrix(6, 0, "exact")
    cross = [(a, b) for a, b in gm.off_diagonal_nonzero() if a[0] != b[0]]
    record_criterion(8, bool(cross), f"gamma=0: {len(cross)} nonzero cross-degree pairs, e.g. {cross[:2]}")
    assert cross


def test_criterion_09_projection(record_criterion):
    rng = random.Random(2024)
    pts = []
    for _ in range(20):
        a, b = sorted((rng.random(), rng.random()))
        pts.append(BaryPoint(a, b - a, 1 - b))
    worst_coeff = 0.0
    worst_point = 0.0
    for n in range(4):
        for lab in basis_indices(n):
            pr = project(basis_poly(*lab), n, 1)
            for other, c in pr.coefficients.items():
                target = 1.0 if other == lab else 0.0
                worst_coeff = max(worst_coeff, abs(c - target))
        for z in tri_indices(n):
            b = BBPoly.basis(z)
            pr = project(b, n, 1)
            worst_point = max(worst_point, max(abs(evaluate_projection(pr, pt) - eval_bbpoly(b, pt)) for pt in pts))
    passed = worst_coeff <= 1e-10 and worst_point <= 1e-9
    record_criterion(9, passed, f"coefficient error {worst_coeff:.1e} (tol 1e-10), pointwise error {worst_point:.1e} (tol 1e-9)")
    assert worst_coeff <= 1e-10
    assert worst_point <= 1e-9


def test_criterion_10_cli_determinism(record_criterion, tmp_path):
    outputs, codes = [], []
    for run in range(2):
        path = tmp_path / f"report{run}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "trichebyshev", "verify", "--n", "4", "--gamma", "1", "--out", str(path)],
            capture_output=True,
        )
        codes.append(proc.returncode)
        outputs.append(path.read_bytes())
    identical = outputs[0] == outputs[1]
    record_criterion(10, identical and codes == [0, 0], f"exit codes {codes}, byte-identical reports: {identical}")
    assert identical
    assert codes == [0, 0]
