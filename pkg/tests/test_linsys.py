import math

import numpy as np
import pytest

from guinand import linsys
from guinand.errors import SingularSystemError
from guinand.explicit import V_of_x
from guinand.theta import alpha, beta

AB11 = 0.047286509832380969757 * 0.04353762280267740185


@pytest.fixture(scope="module")
def t8():
    return linsys.build_system(8)


@pytest.fixture(scope="module")
def t16():
    return linsys.build_system(16)


def test_entry_one_one():
    assert linsys.f_entry(1, 1) == pytest.approx(2 * AB11, abs=1e-7)
    assert linsys.f_entry(1, 1) == pytest.approx(2 * AB11, rel=1e-13)


def test_entry_first_column_doubles():
    assert linsys.f_entry(2, 1) == pytest.approx(2 * alpha(2.0) * beta(0.5), rel=1e-15)


def test_entries_vanish_far_right():
    for m in range(1, 9):
        assert linsys.f_entry(m, 41 * m) < 1e-12


def test_entries_positive():
    idx = np.arange(1, 65, dtype=float)
    f = linsys.f_matrix(idx[:, None], idx[None, :])
    assert np.all(f > 0) and np.all(np.isfinite(f))


def test_entry_rejects_fractions():
    with pytest.raises(ValueError):
        linsys.f_entry(1.5, 2)


def test_layout(t8):
    tm = linsys.build_system(4)
    assert tm.entries.shape == (4, 4)
    assert np.allclose(tm.entries[0], [linsys.f_entry(1, n) for n in range(1, 5)], rtol=0, atol=0)
    assert tm.rhs[0] == V_of_x(1.0).rhs_total
    assert t8.rhs[3] == pytest.approx(V_of_x(4.0).rhs_total / 2, rel=1e-15)


def test_tmatrix_is_frozen(t8):
    with pytest.raises(ValueError):
        t8.entries[0, 0] = 1.0


def test_tmatrix_validates():
    with pytest.raises(ValueError):
        linsys.TMatrix(2, np.array([[1.0, -1.0], [1.0, 1.0]]), np.ones(2))


def test_build_range():
    with pytest.raises(ValueError):
        linsys.build_system(257)


def test_diagonal_asymptotics():
    assert abs(32 * linsys.f_entry(32, 32) - AB11) < 0.05 * AB11


def test_forward_identity(t16):
    r = linsys.forward_residual(t16, 640)
    assert r.max() < 1e-6
    assert r.max() < 1e-15


def test_forward_truncation_point(t8):
    assert linsys.forward_residual(t8, 8)[7] > 1e-3


def test_forward_needs_tail(t8):
    with pytest.raises(ValueError):
        linsys.forward_residual(t8, 4)


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_block_bound(n):
    checks = {c.name.split(".")[-1]: c for c in linsys.structure_checks(n)}
    bound = math.log(2) * 0.047286509832380969757 * 0.0018674687814927998317
    assert checks["block-bound"].expected == pytest.approx(bound, rel=1e-12)
    assert checks["block-bound"].passed
    assert checks["block>diag"].passed
    assert checks["diag"].passed


@pytest.mark.parametrize("n", [4, 8, 16, 32])
def test_block_never_exceeds_scaled_diagonal(n):
    # n f(n, n) tends to alpha(1) beta(1), about twice the block sum
    c = {c.name.split(".")[-1]: c for c in linsys.structure_checks(n)}["block>n*diag"]
    assert not c.passed
    assert 0.3 < c.value / c.expected < 0.55


def test_synthetic_recovery(t8):
    res = linsys.solve_regularized(linsys.synthetic_system(t8), 0.0)
    assert res.max_error < 1e-6
    assert res.forward_residual_inf == pytest.approx(
        np.max(np.abs(t8.entries @ res.lambda_hat - linsys.synthetic_system(t8).rhs)), abs=1e-12)


def test_ridge_sweep_monotone(t8):
    syn = linsys.synthetic_system(t8)
    resid = [linsys.solve_regularized(syn, r).forward_residual_inf for r in (1e-6, 1e-10, 1e-14)]
    assert resid[0] >= resid[1] >= resid[2]


def test_small_ridge_biases_recovery(t8):
    # ridge = 1e-10 exceeds sigma_min(T)^2 ~ 1e-16, so the ridge term dominates the small singular direction
    res = linsys.solve_regularized(linsys.synthetic_system(t8), 1e-10)
    assert res.max_error > 0.1


def test_condition_estimate(t8):
    res = linsys.solve_regularized(t8, 0.0)
    svals = np.linalg.svd(t8.entries, compute_uv=False)
    true_cond = (svals[0] / svals[-1]) ** 2
    assert 1e-3 < res.condition_estimate / true_cond < 1e3


def test_singular_at_large_n():
    tm = linsys.build_system(32)
    with pytest.raises(SingularSystemError):
        linsys.solve_regularized(tm, 0.0)
    c = linsys.recovery_check(tm, 1e-12, gated=False)
    assert not c.gated


def test_negative_ridge():
    with pytest.raises(ValueError):
        linsys.solve_regularized(linsys.build_system(2), -1.0)


def test_psi0_direct():
    assert linsys.psi0(10) == pytest.approx(7.8320, abs=1e-4)
    expected9 = 3 * math.log(2) + 2 * math.log(3) + math.log(5) + math.log(7) - 0.5 * math.log(3)
    assert linsys.psi0(9) == pytest.approx(expected9, rel=1e-15)
    assert linsys.psi0(9) == pytest.approx(7.2827, abs=1e-4)


def test_psi0_explicit():
    c = linsys.psi0_compare(10, 100)
    assert c.passed and c.rel_err < 0.05
    assert c.extra["zeta_log_derivative_at_0"] == pytest.approx(math.log(2 * math.pi))


def test_psi0_explicit_improves_with_zeros():
    from guinand.specfun import zeta_zeros

    z = zeta_zeros(100).ordinates
    gaps = [abs(linsys.psi0_explicit(10.5, z[:k]) - linsys.psi0(10)) for k in (10, 100)]
    assert gaps[1] < gaps[0]


def test_csv_format():
    text = linsys.build_system(3).to_csv().splitlines()
    assert text[0] == "m\\n,1,2,3"
    first = text[1].split(",")
    assert first[0] == "1" and float(first[1]) == linsys.f_entry(1, 1)
