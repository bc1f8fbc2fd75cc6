import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from guinand import explicit, kernel
from guinand.config import KernelConfig, TruncationPolicy
from guinand.errors import DomainError
from guinand.theta import alpha, beta

# prime-sum side by mpmath at 30 digits (mpmath jtheta for alpha and beta)
LHS = {1.0: 0.00062058399305756996, 2.0: 0.0020349055156885394, 0.5: 0.0023585396738812153}


@pytest.mark.parametrize("x", sorted(LHS))
def test_prime_sum_oracle(x):
    assert explicit.lhs_prime_sum(x) == pytest.approx(LHS[x], rel=1e-13)


def test_prime_sum_first_term_at_one():
    # Lambda(1) = 0, so n = 2 is the first contribution
    n2 = math.log(2) * (alpha(2.0) * beta(0.5) + 0.5 * alpha(0.5) * beta(2.0))
    assert 0 < n2 < explicit.lhs_prime_sum(1.0)


def test_prime_sum_tail_halving():
    a = explicit.lhs_prime_sum(2.0)
    b = explicit.lhs_prime_sum(2.0, TruncationPolicy(tail_epsilon=5e-16))
    assert abs(a - b) < 1e-10


def test_cutoff_grows_with_distance_from_one():
    assert explicit.prime_sum_cutoff(10.0) > explicit.prime_sum_cutoff(1.0)
    assert explicit.prime_sum_cutoff(0.1) == explicit.prime_sum_cutoff(10.0)


@pytest.mark.parametrize("x", [0.0, -2.0])
def test_domain(x):
    with pytest.raises(DomainError):
        explicit.V_of_x(x)


def test_boundary_at_one():
    plus = kernel.G_hat_series(0.5j).real
    minus = kernel.G_hat_series(-0.5j).real
    assert explicit.bessel_boundary_terms(1.0) == pytest.approx(plus + minus, rel=1e-10)


def test_boundary_scaling_at_four():
    plus, minus = explicit.ghat_half()
    assert explicit.bessel_boundary_terms(4.0) == pytest.approx(2 * plus + 0.5 * minus, rel=1e-15)


def test_boundary_elimination_structural():
    f = explicit.bessel_boundary_terms
    x = 3.0
    comb = f(x) + f(1 / x) - f(1.0) * (math.sqrt(x) + 1 / math.sqrt(x))
    assert abs(comb) < 1e-12


def test_integrand_limit_at_zero():
    x = 1.7
    ab = alpha(x) * beta(1 / x)
    assert explicit.archimedean_integrand(0.0, x) == pytest.approx(-1.5 * ab, rel=1e-15)
    # the difference quotient approaches the limit linearly
    near = explicit.archimedean_integrand(np.array([1e-3, 1e-4]), x)
    assert abs(near[1] + 1.5 * ab) < abs(near[0] + 1.5 * ab)
    assert abs(near[1] + 1.5 * ab) < 1e-4 * ab


def test_integrand_tail():
    assert abs(explicit.archimedean_integrand(10.0, 1.0)) < 1e-8


@pytest.mark.parametrize("x", [1.0, 2.0, 0.4, 5.0])
def test_archimedean_two_ways(x):
    a = explicit.archimedean_log(x)
    s = explicit.archimedean_spectral(x)
    assert abs(a - s) < 1e-10


def test_spectral_integrand_even_at_one():
    # G_hat(-t) = conj G_hat(t), so at x = 1 only Re G_hat enters
    t = 3.0
    assert kernel.G_hat_series(-t).real == pytest.approx(kernel.G_hat_series(t).real, rel=1e-14)


@pytest.mark.parametrize("x", [1.0, 1.25, 1.5, 2.0, math.e, 3.0, 5.0, 0.2, 10.0])
def test_identity_residual(x):
    p = explicit.V_of_x(x)
    assert p.residual_rel < 1e-12
    assert p.rhs_total == p.bessel_boundary + p.log_pi_term + p.archimedean
    assert p.residual_abs == abs(p.lhs_prime_sum - p.rhs_total)


@settings(max_examples=15, deadline=None)
@given(st.floats(0.15, 8.0))
def test_identity_for_continuous_translates(x):
    assert explicit.V_of_x(x).residual_rel < 1e-10


def test_flipped_orientation_breaks_identity():
    p = explicit.V_of_x(2.0, orientation="flipped")
    assert p.residual_rel > 0.1


def test_orientation_validated():
    with pytest.raises(ValueError):
        explicit.V_of_x(2.0, orientation="sideways")


def test_swapped_boundary_fails():
    # exchanging the roles of G_hat(i/2) and G_hat(-i/2) breaks the identity at x != 1
    plus, minus = explicit.ghat_half()
    x = 2.0
    p = explicit.V_of_x(x)
    swapped = p.rhs_total - p.bessel_boundary + plus / math.sqrt(x) + minus * math.sqrt(x)
    assert abs(swapped - p.lhs_prime_sum) / p.lhs_prime_sum > 1e-2


def test_translate_matches_series():
    v, x = 0.7, 2.0
    assert explicit.G_translate(v, x) == pytest.approx(kernel.G_series(v + math.log(x)), rel=1e-9)


@pytest.mark.parametrize("x, tol", [(2.0, 1e-6), (10.0, 1e-5)])
def test_elimination(x, tol):
    e = explicit.eliminate(x)
    assert abs(e.boundary_combined) < 1e-12
    assert e.residual < tol
    assert explicit.bessel_eliminated_residual(x) == e.residual


def test_elimination_degenerate_at_one():
    e = explicit.eliminate(1.0)
    assert e.lhs_combined == 0 and e.rhs_combined == 0


def test_smaller_j_max_still_closes():
    cfg = KernelConfig(j_max=60)
    assert explicit.V_of_x(1.5, cfg).residual_rel < 1e-10
