import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.special import jv

from aokr import oracle
from aokr.errors import DomainError
from aokr.oracle import ResonanceContext as Ctx
from aokr.units import DEFAULT_CONSTANTS as C

contexts = st.builds(Ctx, l=st.integers(1, 8), beta=st.floats(0, 1, exclude_max=True),
                     phi_d=st.floats(0, 5), n=st.integers(0, 12))


def test_bessel_examples():
    assert oracle.bessel_j(0, 0.0) == 1.0
    assert oracle.bessel_j(1, 1.0) == pytest.approx(0.4400505857, abs=1e-10)
    assert oracle.bessel_j(0, 4.5) == pytest.approx(-0.3205425090, abs=1e-10)
    assert oracle.bessel_j(-3, 2.0) == pytest.approx(-jv(3, 2.0), abs=1e-14)
    j = oracle.bessel_orders(50, 5.0)
    assert np.sum(j**2) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100)
@given(st.integers(-200, 200), st.floats(-100, 100))
def test_bessel_matches_scipy(order, x):
    assert oracle.bessel_j(order, x) == pytest.approx(jv(order, x), abs=1e-12)


@pytest.mark.parametrize("order, x", [(201, 1.0), (1.5, 1.0), (0, 100.5), (0, math.nan)])
def test_bessel_domain(order, x):
    with pytest.raises(DomainError):
        oracle.bessel_j(order, x)


def test_effective_argument_examples():
    assert oracle.effective_argument(Ctx(1, 0.0, 1.7, 2)) == 0.0
    for n in range(1, 8):
        arg = oracle.effective_argument(Ctx(2, 0.0, 1.5, n))
        assert arg == (-1) ** (n - 1) * n * 1.5
        # the limit agrees with the ratio just off resonance
        ups = math.pi + 1e-6
        assert arg == pytest.approx(1.5 * math.sin(n * ups) / math.sin(ups), rel=1e-6)
    assert abs(oracle.effective_argument(Ctx(1, 0.5, 1.5, 2))) == 3.0
    assert Ctx(1, 0.5, 1.5, 2).is_resonant()
    assert not Ctx(1, 0.25, 1.5, 2).is_resonant()


def test_ladder_examples():
    amp = oracle.ladder_amplitudes(Ctx(3, 0.3, 2.0, 0))
    assert amp.population(0) == pytest.approx(1.0, abs=1e-15)
    assert np.sum(amp.populations) == pytest.approx(1.0, abs=1e-15)
    anti = oracle.ladder_amplitudes(Ctx(1, 0.0, 3.3, 2))
    assert anti.population(0) == 1.0 and anti.population(1) == 0.0
    res = oracle.ladder_amplitudes(Ctx(2, 0.0, 1.5, 3))
    # J_0(4.5)^2 from scipy jv, confirmed with mpmath
    assert res.population(0) == pytest.approx(0.1027475, abs=1e-6)
    assert res.population(500) == 0.0


def test_moment_examples():
    assert oracle.momentum_moment(Ctx(1, 0.0, 2.0, 2), 2) == 0.0
    for n in range(1, 7):
        assert oracle.momentum_moment(Ctx(2, 0.0, 1.5, n), 2) == pytest.approx((n * 1.5) ** 2 / 2,
                                                                               rel=1e-12)
        assert oracle.energy_erec(Ctx(2, 0.0, 1.5, n)) == pytest.approx(2 * 1.5**2 * n**2, rel=1e-12)
    assert oracle.momentum_moment(Ctx(3, 0.0, 2.2, 3), 1) == pytest.approx(0.0, abs=1e-14)
    # a ladder offset shifts the first moment by k
    assert oracle.momentum_moment(Ctx(3, 0.25, 2.2, 3), 1, k=2) == pytest.approx(2.25, abs=1e-13)
    with pytest.raises(DomainError):
        oracle.momentum_moment(Ctx(1, 0.0, 1.0, 1), 5)


def test_second_moment_vs_beta_examples():
    betas = np.arange(8) / 8
    e = oracle.second_moment_vs_beta(1, 2, 1.5, betas)
    assert e[0] == 0.0
    assert np.argmax(e) == 4
    e3 = oracle.second_moment_vs_beta(3, 2, 1.5, np.arange(240) / 240)
    e1 = oracle.second_moment_vs_beta(1, 2, 1.5, np.arange(240) / 240)
    excess3 = e3 - (np.arange(240) / 240) ** 2
    excess1 = e1 - (np.arange(240) / 240) ** 2
    # three times the rate
    assert np.allclose(excess3[:80], excess1[::3], atol=1e-12)
    with pytest.raises(DomainError):
        oracle.second_moment_vs_beta(1, 2, 1.0, [1.0])


def test_fractional_times():
    table = oracle.fractional_times(6)
    lm = [(l, m) for l, m, _ in table]
    assert (2, 2) not in lm and (2, 4) not in lm
    times = {(l, m): t for l, m, t in table}
    assert times[(1, 4)] == pytest.approx(16.58e-6, abs=0.02e-6)
    assert times[(1, 5)] == pytest.approx(13.26e-6, abs=0.02e-6)
    assert times[(1, 1)] == C.T_talbot
    assert [t for *_, t in table] == sorted(t for *_, t in table)
    with pytest.raises(DomainError):
        oracle.fractional_times(1)


def test_context_from_period():
    ctx = oracle.context_from_period(1.5 * C.T_talbot, 0.0, 1.0, 2)
    assert ctx.l == 3
    with pytest.raises(DomainError, match="half-integer"):
        oracle.context_from_period(0.3 * C.T_talbot, 0.0, 1.0, 2)
    for bad in [dict(l=0), dict(beta=1.0), dict(n=-1), dict(phi_d=-1.0)]:
        with pytest.raises(DomainError):
            Ctx(**(dict(l=1, beta=0.0, phi_d=1.0, n=1) | bad))


@settings(max_examples=500)
@given(contexts)
def test_completeness(ctx):
    assert np.sum(oracle.ladder_amplitudes(ctx).populations) == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=200)
@given(contexts)
def test_moment_formulas_agree(ctx):
    a = oracle.momentum_moment(ctx, 2)
    b = oracle.second_moment_vs_beta(ctx.l, ctx.n, ctx.phi_d, [ctx.beta])[0]
    assert a == pytest.approx(b, abs=1e-12 * max(1.0, a))


@given(st.integers(1, 4), st.integers(0, 8), st.floats(0, 5))
def test_resonant_limit(half_l, n, phi):
    amp = oracle.ladder_amplitudes(Ctx(2 * half_l, 0.0, phi, n))
    want = oracle.resonant_populations(phi, n, amp.orders)
    assert np.max(np.abs(amp.populations - want)) < 1e-12


@given(st.integers(0, 10), st.floats(0, 5))
def test_antiresonance_period_two(n, phi):
    a = oracle.ladder_amplitudes(Ctx(1, 0.0, phi, n))
    b = oracle.ladder_amplitudes(Ctx(1, 0.0, phi, n + 2))
    js = range(-40, 41)
    assert np.allclose([a.population(j) for j in js], [b.population(j) for j in js], atol=1e-14)


@given(st.integers(1, 6), st.floats(0, 1, exclude_max=True), st.floats(0, 4), st.integers(0, 8))
def test_beta_periodicity(l, beta, phi, n):
    # populations, hence the energy above the beta^2 baseline, repeat every 1/l
    shifted = (beta + 1.0 / l) % 1.0
    a, b = Ctx(l, beta, phi, n), Ctx(l, shifted, phi, n)
    js = range(-60, 61)
    pa = [oracle.ladder_amplitudes(a).population(j) for j in js]
    pb = [oracle.ladder_amplitudes(b).population(j) for j in js]
    assert np.allclose(pa, pb, atol=1e-10)
    ea = oracle.momentum_moment(a, 2) - beta**2
    eb = oracle.momentum_moment(b, 2) - shifted**2
    assert ea == pytest.approx(eb, abs=1e-10 * max(1.0, ea))
