"""Exact verification suite behind ``trichebyshev verify``."""

from __future__ import annotations

from fractions import Fraction

from .bernstein import eval_bbpoly, lattice_points
from .combinatorics import check_half_binomial_identity
from .simplex_basis import coeffs_closed_form, coeffs_recursive, eval_factored
from .weighted_ip import q_moment, lower_degree_failures, weighted_inner_exact

MAX_REPORTED_FAILURES = 10


def _check(claim: str, description: str, hypothesis: str, holds: bool, instances: int, failures: list) -> dict:
    if not failures:
        status = "pass"
    elif holds:
        status = "fail"
    else:
        status = "outside_hypothesis"
    return {
        "claim": claim,
        "description": description,
        "hypothesis": hypothesis,
        "hypothesis_holds": holds,
        "instances": instances,
        "failures": len(failures),
        "failed_instances": failures[:MAX_REPORTED_FAILURES],
        "status": status,
    }


def check_half_binomial(n: int) -> dict:
    cases = [(m, k) for m in range(n + 1) for k in range(m + 1)]
    bad = [{"n": m, "k": k} for m, k in cases if not check_half_binomial_identity(m, k)]
    return _check(
        "half_binomial_identity",
        "C(n-1/2, n-k) C(n-1/2, k) = 4^-n C(2n, n) C(2n, 2k)",
        "none", True, len(cases), bad,
    )


def check_q_moments(n: int) -> dict:
    cases = [(m, r, i) for m in range(n + 1) for r in range(m + 1) for i in range(m - r)]
    bad = [{"n": m, "r": r, "i": i} for m, r, i in cases if q_moment(m, r, i) != 0]
    return _check(
        "q_moment_orthogonality",
        "integral of Q_{n,r}(w) w^i (1-w)^(2r+1) over [0,1] is 0 for i < n-r",
        "none", True, len(cases), bad,
    )


def check_recursion(n: int) -> dict:
    cases = [(m, r) for m in range(n + 1) for r in range(m + 1)]
    bad = []
    for m, r in cases:
        closed, rec = coeffs_closed_form(m, r).bb, coeffs_recursive(m, r).bb
        if closed.coeffs != rec.coeffs:
            bad.append({"n": m, "r": r})
    return _check(
        "closed_form_equals_recursion",
        "coefficients from the layer recursion seeded on the w=0 edge equal the closed form",
        "none", True, len(cases), bad,
    )


def check_factored_form(n: int, divisions: int = 4) -> dict:
    points = lattice_points(divisions)
    cases = [(m, r) for m in range(n + 1) for r in range(m + 1)]
    bad = []
    for m, r in cases:
        bb = coeffs_closed_form(m, r).bb
        if any(eval_bbpoly(bb, pt) != eval_factored(m, r, pt) for pt in points):
            bad.append({"n": m, "r": r})
    return _check(
        "bb_form_equals_factored_form",
        "BB evaluation equals T_r(u/(1-w)) (1-w)^r Q_{n,r}(w) on a rational lattice",
        "none", True, len(cases) * len(points), bad,
    )


def check_same_degree(n: int, gamma: int) -> dict:
    instances, bad = 0, []
    for m in range(n + 1):
        polys = [coeffs_closed_form(m, r).bb for r in range(m + 1)]
        for r in range(m + 1):
            for s in range(r + 1, m + 1):
                instances += 1
                val = weighted_inner_exact(polys[r], polys[s], gamma)
                if not val.is_zero():
                    bad.append({"n": m, "r": r, "s": s, "value": val.to_json()})
    return _check(
        "same_degree_orthogonality",
        "<T_{n,r}, T_{n,s}>_W = 0 for r != s",
        "gamma > -1", gamma > -1, instances, bad,
    )


def check_lower_degree(n: int, gamma: int) -> dict:
    instances, bad = 0, []
    for m in range(1, n + 1):
        for r in range(m + 1):
            instances += m * (m + 1) // 2
            for s, mm, val in lower_degree_failures(m, r, gamma):
                bad.append({"n": m, "r": r, "s": s, "m": mm, "value": val.to_json()})
    return _check(
        "orthogonal_to_lower_degree",
        "<T_{n,r}, g_{s,m}>_W = 0 for all test functions spanning degree < n",
        "gamma >= 1", gamma >= 1, instances, bad,
    )


def run_suite(n: int, gamma: int) -> dict:
    checks = [
        check_half_binomial(n),
        check_q_moments(n),
        check_recursion(n),
        check_factored_form(n),
        check_same_degree(n, gamma),
        check_lower_degree(n, gamma),
    ]
    return {
        "n": n,
        "gamma": str(Fraction(gamma)),
        "checks": checks,
        "all_pass": all(c["status"] != "fail" for c in checks),
    }
