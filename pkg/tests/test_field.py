import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paraprod.field import (GridSpec, SampledField, Spectrum, apply_multiplier, band_limit,
                            dilate, forward_transform, fractional_derivative,
                            inverse_transform, pointwise_product)
from paraprod.oracles import (direct_dilate, direct_forward, direct_inverse,
                              direct_multiplier)


def random_field(grid, seed=0, mean_zero=False):
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape)
    if mean_zero:
        v -= v.mean()
    return SampledField(grid, v)


def rel(a, b):
    return np.abs(a - b).max() / max(np.abs(b).max(), 1e-300)


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(1, 24)
    with pytest.raises(ValueError):
        GridSpec(1, 8)
    with pytest.raises(ValueError):
        GridSpec(3, 16)
    with pytest.raises(ValueError):
        GridSpec(1, 16, -1.0)
    with pytest.raises(ValueError):
        SampledField(GridSpec(1, 16), np.zeros(15))


def test_constant_has_only_dc():
    g = GridSpec(1, 16)
    c = forward_transform(SampledField.constant(g, 2.5 - 1j)).coeffs
    assert c[0] == pytest.approx(2.5 - 1j, abs=1e-14)
    assert np.abs(c[1:]).max() < 1e-14


def test_pure_mode():
    g = GridSpec(1, 16, 3.0)
    f = SampledField.from_function(g, lambda x: np.exp(2j * np.pi * x / g.period))
    spec = forward_transform(f)
    assert spec.coeff(1) == pytest.approx(1.0, abs=1e-14)
    others = np.delete(spec.coeffs, 1)
    assert np.abs(others).max() < 1e-14


def test_coeff_index_checks():
    spec = forward_transform(SampledField.constant(GridSpec(1, 16), 1.0))
    with pytest.raises(IndexError):
        spec.coeff(8)
    with pytest.raises(ValueError):
        spec.coeff(0, 0)


@pytest.mark.parametrize("dim,n", [(1, 64), (2, 16)])
def test_round_trip_and_oracle(dim, n):
    g = GridSpec(dim, n, 5.0)
    f = random_field(g, 1)
    spec = forward_transform(f)
    assert rel(spec.coeffs, direct_forward(f).coeffs) < 1e-12
    assert rel(inverse_transform(spec).values, f.values) < 1e-12
    assert rel(direct_inverse(spec).values, f.values) < 1e-12


def test_identity_multiplier_and_zero_value_required():
    g = GridSpec(1, 32)
    f = random_field(g, 2)
    out = apply_multiplier(f, lambda xi: np.ones_like(xi), zero_value=1.0)
    assert rel(out.values, f.values) < 1e-14
    with pytest.raises(ValueError):
        apply_multiplier(f, lambda xi: xi)


def test_derivative_of_sine():
    g = GridSpec(1, 64, 3.0)
    k0 = 2 * np.pi / g.period
    f = SampledField.from_function(g, lambda x: np.sin(k0 * x))
    out = apply_multiplier(f, lambda xi: 1j * xi, zero_value=0.0)
    expect = k0 * np.cos(k0 * g.axis())
    assert np.abs(out.values - expect).max() < 1e-10


def test_non_finite_symbol_names_frequency():
    g = GridSpec(1, 16)
    f = random_field(g)
    with pytest.raises(ValueError, match="frequency"):
        apply_multiplier(f, lambda xi: np.where(xi == 3.0, np.inf, 1.0), zero_value=0.0)
    bad = np.ones(16)
    bad[5] = np.nan
    with pytest.raises(ValueError, match="frequency"):
        apply_multiplier(f, bad)


@pytest.mark.parametrize("dim,n", [(1, 32), (2, 16)])
def test_multiplier_matches_direct_sum(dim, n):
    g = GridSpec(dim, n, 4.0)
    f = random_field(g, 3)
    sym = lambda *xi: np.exp(-0.1 * sum(x ** 2 for x in xi)) * (1 + 0.3j * xi[0])
    fast = apply_multiplier(f, sym, zero_value=0.7)
    mult = np.empty(g.shape, dtype=complex)
    nz = g.frequency_magnitude() > 0
    mult[nz] = sym(*(x[nz] for x in g.frequencies()))
    mult[~nz] = 0.7
    assert rel(fast.values, direct_multiplier(f, mult).values) < 1e-10


def test_fractional_derivative_examples():
    g = GridSpec(1, 64, 3.0)
    f = random_field(g, 4)
    d0 = fractional_derivative(f, 0.0)
    assert rel(d0.values, f.values - f.mean()) < 1e-12
    k0 = 2 * np.pi / g.period
    s = SampledField.from_function(g, lambda x: np.sin(k0 * x))
    assert np.abs(fractional_derivative(s, 2.0).values - k0 ** 2 * s.values).max() < 1e-10
    with pytest.raises(ValueError):
        fractional_derivative(f, -0.5)


def test_fractional_derivative_oracle():
    g = GridSpec(1, 64, 2 * np.pi)
    f = random_field(g, 5, mean_zero=True)
    mag = g.frequency_magnitude()
    mult = np.where(mag > 0, np.sqrt(mag), 0.0)
    assert rel(fractional_derivative(f, 0.5).values, direct_multiplier(f, mult).values) < 1e-10


def test_dilate_examples():
    g = GridSpec(1, 64, 2 * np.pi)
    f = random_field(g, 6)
    assert rel(dilate(f, 0).values, f.values) < 1e-15
    mode2 = SampledField.from_function(g, lambda x: np.exp(2j * x))
    out = dilate(mode2, 1)
    assert np.abs(out.values - np.exp(4j * g.axis())).max() < 1e-12
    assert abs(forward_transform(out).coeff(4) - 1) < 1e-13
    # a mode pushed past the band is dropped
    top = SampledField.from_function(g, lambda x: np.exp(20j * x))
    assert dilate(top, 1).sup() < 1e-12
    with pytest.raises(ValueError):
        dilate(f, 5)


def test_dilate_down_matches_resampling():
    g = GridSpec(1, 64, 2 * np.pi)
    # only even modes give an L-periodic f(x / 2)
    f = band_limit(random_field(g, 7), 16)
    c = forward_transform(f).coeffs
    c[g.mode_axis() % 2 == 1] = 0
    f = inverse_transform(Spectrum(g, c))
    assert rel(dilate(f, -1).values, direct_dilate(f, -1).values) < 1e-10
    assert rel(dilate(f, 1).values, direct_dilate(f, 1).values) < 1e-10


def test_pointwise_product():
    g = GridSpec(1, 32, 2.0)
    f = random_field(g, 8)
    one = SampledField.constant(g, 1.0)
    assert rel(pointwise_product(one, f).values, f.values) < 1e-15
    bump = SampledField.from_function(g, lambda x: np.exp(-1 / np.maximum(1 - (4 * x) ** 2, 1e-9)))
    sq = pointwise_product(bump, bump)
    assert np.all(sq.values.real >= 0) and np.all(sq.values.imag == 0)
    with pytest.raises(ValueError):
        pointwise_product(f, SampledField.constant(GridSpec(1, 64), 1.0))


def test_product_is_cyclic_convolution_of_spectra():
    g = GridSpec(1, 32, 2 * np.pi)
    f, h = random_field(g, 9), random_field(g, 10)
    a, b = direct_forward(f).coeffs, direct_forward(h).coeffs
    k = g.mode_axis()
    conv = np.zeros(32, dtype=complex)
    for i in range(32):
        for j in range(32):
            conv[(k[i] + k[j]) % 32] += a[i] * b[j]
    assert rel(forward_transform(pointwise_product(f, h)).coeffs, conv) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31), st.sampled_from([(1, 64), (2, 16)]))
def test_parseval(seed, shape):
    g = GridSpec(*shape, 3.0)
    f = random_field(g, seed)
    lhs = np.sum(np.abs(f.values) ** 2) * g.cell_volume
    rhs = np.sum(np.abs(forward_transform(f).coeffs) ** 2) * g.period ** g.dim
    assert abs(lhs - rhs) / rhs < 1e-10


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31), st.complex_numbers(max_magnitude=10, allow_nan=False,
                                                    allow_infinity=False))
def test_multiplier_linearity(seed, lam):
    g = GridSpec(1, 64)
    f, h = random_field(g, seed), random_field(g, seed + 1)
    sym = lambda xi: np.cos(xi) + 1j * np.abs(xi) ** 0.3
    lhs = apply_multiplier(f + h * lam, sym, zero_value=2.0)
    rhs = apply_multiplier(f, sym, zero_value=2.0) + apply_multiplier(h, sym, zero_value=2.0) * lam
    scale = max(1.0, abs(lam))
    assert np.abs(lhs.values - rhs.values).max() / (scale * np.abs(rhs.values).max() + 1e-300) < 1e-12


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31), st.floats(0, 3), st.floats(0, 3))
def test_derivative_semigroup(seed, s, t):
    g = GridSpec(1, 64)
    f = random_field(g, seed, mean_zero=True)
    lhs = fractional_derivative(fractional_derivative(f, s), t)
    rhs = fractional_derivative(f, s + t)
    assert rel(lhs.values, rhs.values) < 1e-9


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31), st.sampled_from([1, 2]))
def test_dilate_round_trip(seed, dim):
    g = GridSpec(dim, 64 if dim == 1 else 32)
    f = band_limit(random_field(g, seed), g.n // 4)
    assert rel(dilate(dilate(f, 1), -1).values, f.values) < 1e-12
