"""Acceptance gate: eleven criteria at their stated tolerances.

Each test records one PASS/FAIL line, shown in the terminal summary under
"acceptance criteria", then asserts the criterion as stated.
"""

import math
import time

import pytest

from guinand import explicit, kernel, linsys, modular
from guinand.arith import coeff_array
from guinand.specfun import zeta_zeros
from guinand.theta import alpha, beta, theta_power_coeffs

pytestmark = pytest.mark.acceptance


def test_c01_zeta_factorization(acceptance_line):
    t0 = time.perf_counter()
    real = [kernel.verify_factorization(s, tol=1e-8) for s in (2, 2.5, 3)]
    cplx = [kernel.verify_factorization(s, tol=1e-6) for s in (1.5 + 5j, 0.5 + 10j)]
    elapsed = time.perf_counter() - t0
    worst_r = max(c.rel_err for c in real)
    worst_c = max(c.rel_err for c in cplx)
    ok = all(c.passed for c in real + cplx) and elapsed < 30
    acceptance_line(1, "E(s) zeta(s) = Bessel double sum", ok,
                    f"max rel {worst_r:.1e} (real s, tol 1e-8), {worst_c:.1e} (complex s, tol 1e-6), "
                    f"{elapsed:.2f}s")
    assert ok


def test_c02_vanishing_at_zeros(acceptance_line):
    t0 = time.perf_counter()
    dips = [kernel.zero_dip(g, tol=1e-3) for g in zeta_zeros(5)]
    grid = [kernel.verify_factorization(0.5 + 1j * t, tol=1e-6) for t in (0, 5, 10, 20)]
    elapsed = time.perf_counter() - t0
    ok = all(c.passed for c in dips + grid) and elapsed < 60
    acceptance_line(2, "G_hat vanishes at zeta zeros", ok,
                    f"worst dip ratio {max(c.rel_err for c in dips):.1e} (tol 1e-3), "
                    f"grid max rel {max(c.rel_err for c in grid):.1e} (tol 1e-6), {elapsed:.2f}s")
    assert ok


def test_c03_explicit_identity(acceptance_line):
    t0 = time.perf_counter()
    xs = [1, 1.25, 1.5, 2, math.e, 3, 5]
    res = [explicit.V_of_x(x).residual_rel for x in xs]
    elapsed = time.perf_counter() - t0
    ok = max(res) < 1e-6 and elapsed < 60
    acceptance_line(3, "explicit identity at translates", ok,
                    f"max residual_rel {max(res):.1e} over {len(xs)} x (tol 1e-6), {elapsed:.2f}s")
    assert ok


def test_c04_archimedean_two_ways(acceptance_line):
    t0 = time.perf_counter()
    gaps = [abs(explicit.archimedean_log(x) - explicit.archimedean_spectral(x)) for x in (1, 2)]
    elapsed = time.perf_counter() - t0
    ok = max(gaps) < 1e-5 and elapsed < 60
    acceptance_line(4, "J-integral vs digamma integral", ok,
                    f"max |diff| {max(gaps):.1e} (tol 1e-5), {elapsed:.2f}s")
    assert ok


def test_c05_boundary_elimination(acceptance_line):
    e = explicit.eliminate(2.0)
    ok = abs(e.boundary_combined) < 1e-12 and e.residual < 1e-6
    acceptance_line(5, "boundary elimination at x = 2", ok,
                    f"boundary {abs(e.boundary_combined):.1e} (tol 1e-12), "
                    f"residual {e.residual:.1e} (tol 1e-6)")
    assert ok


def test_c06_matrix_structure(acceptance_line):
    ab = float(alpha(1.0) * beta(1.0))
    bound = math.log(2) * float(alpha(1.0) * beta(2.0))
    rows = []
    for n in (4, 8, 16, 32):
        block = linsys.block_sum(n)
        rows.append((n, block, n * linsys.f_entry(n, n)))
    bound_ok = all(b >= bound for _, b, _ in rows)
    dominance_ok = all(b > nd for _, b, nd in rows)
    diag_ok = abs(32 * linsys.f_entry(32, 32) - ab) < 0.05 * ab
    ok = bound_ok and dominance_ok and diag_ok
    detail = ", ".join(f"n={n}: block {b:.3e} vs n*f(n,n) {nd:.3e}" for n, b, nd in rows)
    acceptance_line(6, "matrix structure", ok,
                    f"block >= bound {bound:.3e}: {bound_ok}; block > n*f(n,n): {dominance_ok} "
                    f"({detail}); diagonal within 5%: {diag_ok}")
    assert bound_ok
    assert diag_ok
    assert dominance_ok, "block sum stays below n*f(n,n), which tends to alpha(1)beta(1)"


def test_c07_forward_identity_and_recovery(acceptance_line):
    tm = linsys.build_system(16)
    fwd = float(linsys.forward_residual(tm, 640).max())
    t8 = linsys.build_system(8)
    syn = linsys.solve_regularized(linsys.synthetic_system(t8), 0.0)
    true = linsys.solve_regularized(t8, 0.0)
    ok = fwd < 1e-6 and syn.max_error < 1e-6
    acceptance_line(7, "forward identity and synthetic recovery", ok,
                    f"forward max {fwd:.1e} (tol 1e-6), synthetic N=8 max error {syn.max_error:.1e} "
                    f"(tol 1e-6); true-rhs N=8 max error {true.max_error:.2e} (report only)")
    assert ok


def test_c08_modular_special_values(acceptance_line):
    checks = modular.special_value_checks(ms=(2, 3, 5), tol=1e-12)
    checks += [modular.beta_theta_link(r, tol=1e-12) for r in (0.5, 1.0, 2.0)]
    ok = all(c.passed for c in checks)
    acceptance_line(8, "modular special values", ok,
                    f"{sum(c.passed for c in checks)}/{len(checks)} checks, "
                    f"max rel {max(c.rel_err for c in checks):.1e} (tol 1e-12)")
    assert ok


def test_c09_psi0(acceptance_line):
    direct = linsys.psi0(10)
    cmp = linsys.psi0_compare(10, 100, tol=0.05)
    ok = abs(direct - 7.8320) < 1e-4 and cmp.passed
    acceptance_line(9, "Psi_0(10)", ok,
                    f"direct {direct:.6f} (7.8320 +- 1e-4), explicit with 100 zeros {cmp.value:.6f}, "
                    f"rel gap {cmp.rel_err:.1e} (tol 0.05)")
    assert ok


def test_c10_weight8_ratio(acceptance_line):
    checks = kernel.weight8_constant_ratio([2, 2.5, 3], tol=1e-6)
    gate = checks[-1]
    ratios = ", ".join(f"{complex(c.extra['ratio']).real:.15f}" for c in checks[:-1])
    acceptance_line(10, "theta_4^8 constant ratio", gate.passed,
                    f"ratio spread {gate.value:.1e} (tol 1e-6); ratios {ratios} with B = b*b")
    assert gate.passed


def test_c11_q_expansions(acceptance_line):
    t4 = theta_power_coeffs(4, 4, 200).coefficients
    t2 = theta_power_coeffs(2, 4, 200).shifted()
    c, b = coeff_array("c", 200), coeff_array("b", 200)
    bad4 = [k for k in range(1, 201) if t4[k] != -8 * int(c[k])]
    bad2 = [n for n in range(1, 201) if t2[n] != 16 * int(b[n])]
    ok = not bad4 and not bad2
    acceptance_line(11, "q-expansion exactness", ok,
                    f"theta_4^4 mismatches {len(bad4)}, theta_2^4 mismatches {len(bad2)} (n <= 200)")
    assert ok
