import numpy as np
import pytest
from scipy.integrate import quad

from paraprod.calderon import (ScaleGrid, apply_Pt, apply_Qt, calderon_sum,
                               export_profiles_csv, make_auxiliary_family, make_bump_pair,
                               pt_sup_ratio)
from paraprod.corpus import generate_corpus
from paraprod.field import GridSpec, SampledField, band_limit, forward_transform
from paraprod.norms import NormConfig, bmo_local_norm, bmo_seminorm
from paraprod.oracles import direct_multiplier
from paraprod.weights import builtin_weight

PAIR = make_bump_pair()


def random_field(grid, seed=0):
    rng = np.random.default_rng(seed)
    return SampledField(grid, rng.standard_normal(grid.shape) + 1j * rng.standard_normal(grid.shape))


def test_scale_grid_structure():
    sg = ScaleGrid.from_range(1e-3, 10.0)
    t = sg.t_values
    assert np.all(np.diff(t) > 0)
    r = t[1:] / t[:-1]
    assert np.abs(r - r[0]).max() < 1e-12
    assert np.isclose(np.log(r[0]), sg.log_step, rtol=1e-12)
    assert sg.t_min <= 1e-3 and sg.t_max >= 10.0
    assert 1.0 in set(t.tolist())
    assert np.all(sg.quad_weights == sg.log_step)
    with pytest.raises(ValueError):
        ScaleGrid.from_range(0.0, 1.0)


@pytest.mark.parametrize("grid", [GridSpec(1, 1024), GridSpec(1, 64, 10.0), GridSpec(2, 64, 3.0)])
def test_covering_grid(grid):
    sg = ScaleGrid.covering(grid, PAIR)
    assert sg.t_min <= grid.spacing / PAIR.beta
    assert sg.t_max >= grid.period
    mag = grid.frequency_magnitude()
    nz = np.unique(mag[mag > 0])
    assert all(sg.covers(x, PAIR.alpha, PAIR.beta) for x in nz)
    assert np.abs(calderon_sum(PAIR, sg, nz) - 1).max() < 1e-6


def test_calderon_sum_at_ten():
    sg = ScaleGrid.from_range(1e-3, 10.0)
    assert abs(calderon_sum(PAIR, sg, 10.0)[0] - 1) < 1e-6


def test_normalization_matches_continuous_integral():
    # midpoint rule in log t against adaptive quadrature of the same window
    a, b = np.log(PAIR.alpha), np.log(PAIR.beta)
    raw = lambda u: PAIR._raw_psi(np.array([np.exp(u)]))[0] ** 2
    cont = quad(raw, a, b, epsabs=1e-14, epsrel=1e-13, limit=200)[0]
    assert PAIR.normalization_constant == pytest.approx(cont, rel=1e-8)


def test_make_bump_pair_variants():
    cm = make_bump_pair(0.8, 1.2)
    sg = ScaleGrid.from_range(1e-3, 100.0)
    xi = np.array([0.37, 1.0, 5.0, 41.0])
    assert np.abs(calderon_sum(cm, sg, xi) - 1).max() < 1e-6
    rho = np.linspace(0, 2, 401)
    assert np.all(cm.psi_hat(rho[(rho <= 0.8) | (rho >= 1.2)]) == 0)
    wide = make_bump_pair(0.8, 1.2, r0=30.0, phi_radius=40.0)
    assert np.all(wide.phi_hat(np.linspace(0, 30, 301)) == 1.0)
    assert wide.phi_hat(40.0) == 0.0
    q = make_bump_pair(profile="quintic")
    assert abs(calderon_sum(q, sg, 3.3)[0] - 1) < 1e-6
    with pytest.raises(ValueError):
        make_bump_pair(2.0, 1.0)
    with pytest.raises(ValueError):
        make_bump_pair(1.0, 4.0, r0=5.0)


def test_profile_shapes():
    rho = np.linspace(0, 6, 6001)
    psi, phi = PAIR.psi_hat(rho), PAIR.phi_hat(rho)
    assert np.all(psi[(rho <= PAIR.alpha) | (rho >= PAIR.beta)] == 0)
    assert phi[0] == 1.0 and np.all(phi[rho <= PAIR.r0] == 1.0)
    assert np.all(phi[rho >= PAIR.phi_radius] == 0)
    # bounded second differences (C^2 profile)
    h = rho[1] - rho[0]
    for prof in (psi, phi):
        d2 = np.diff(prof, 2) / h ** 2
        assert np.abs(d2).max() < 1e3


def test_pt_examples():
    g = GridSpec(1, 128)
    f = band_limit(random_field(g, 1), 10)
    t_small = PAIR.r0 / g.nyquist
    assert np.abs(apply_Pt(PAIR, t_small, f).values - f.values).max() < 1e-12
    c = SampledField.constant(g, 3.0 - 2j)
    assert np.abs(apply_Pt(PAIR, 0.7, c).values - c.values).max() < 1e-13
    with pytest.raises(ValueError):
        apply_Pt(PAIR, 0.0, f)


def test_pt_qt_match_direct_sum():
    g = GridSpec(1, 64, 2 * np.pi)
    f = random_field(g, 2)
    mag = g.frequency_magnitude()
    for t in (0.3, 1.0):
        pf = direct_multiplier(f, PAIR.phi_hat(t * mag).astype(complex))
        qf = direct_multiplier(f, PAIR.psi_hat(t * mag).astype(complex))
        assert np.abs(apply_Pt(PAIR, t, f).values - pf.values).max() < 1e-10
        assert np.abs(apply_Qt(PAIR, t, f).values - qf.values).max() < 1e-10


def test_qt_examples():
    g = GridSpec(1, 64, 2 * np.pi)
    assert apply_Qt(PAIR, 1.0, SampledField.constant(g, 5.0)).sup() < 1e-14
    mode = SampledField.from_function(g, lambda x: np.exp(3j * x))
    assert apply_Qt(PAIR, 0.9 * PAIR.alpha / 3, mode).sup() < 1e-14
    sg = ScaleGrid.covering(g, PAIR)
    recon = sum(apply_Qt(PAIR, t, apply_Qt(PAIR, t, mode)).values for t in sg.t_values)
    assert np.abs(recon * sg.log_step - mode.values).max() < 1e-6


def test_qt_spectrum_support_exact():
    g = GridSpec(1, 256, 2 * np.pi)
    f = random_field(g, 3)
    mag = g.frequency_magnitude()
    fc = forward_transform(f).coeffs
    for t in (0.05, 0.21, 1.0):
        outside = (t * mag <= PAIR.alpha) | (t * mag >= PAIR.beta)
        # the multiplier itself vanishes exactly; the synthesized field only to rounding
        assert np.all(PAIR.psi_hat(t * mag)[outside] * fc[outside] == 0)
        c = forward_transform(apply_Qt(PAIR, t, f)).coeffs
        assert np.abs(c[outside]).max() < 1e-15 * np.abs(fc).max() * g.n


def test_auxiliary_family():
    fam = make_auxiliary_family(PAIR)
    g = GridSpec(2, 64, 1.0)
    mag = g.frequency_magnitude()
    assert np.array_equal(PAIR.phi_hat(mag), fam.psi1_hat(mag) + fam.phi1_hat(mag))
    a, b = PAIR.alpha, fam.plateau
    rho = np.linspace(0, 5 * b, 20001)
    assert np.all(fam.psi1_hat(rho[rho <= a / 8]) == 0)
    assert np.all(fam.phi1_hat(rho[rho >= a / 4]) == 0)
    assert np.all(fam.psi2_hat(rho[(rho >= a / 4) & (rho <= b)]) == 1)
    assert np.all(fam.phi2_hat(rho[rho <= b]) == 1)
    assert np.all(fam.psi3_hat(rho[fam.psi2_hat(rho) > 0]) == 1)
    assert b >= 2 * PAIR.beta
    assert float(fam.psi2_hat(np.array([(a / 4 + 2 * PAIR.beta) / 2]))[0]) == 1.0
    assert float(fam.psi1_hat(np.array([a / 16]))[0]) == 0.0
    with pytest.raises(ValueError):
        make_auxiliary_family(make_bump_pair(r0=0.1))


def test_pt_sup_ratio_examples():
    g = GridSpec(1, 256)
    sg = ScaleGrid.covering(g, PAIR)
    unit = builtin_weight("unit")
    assert pt_sup_ratio(PAIR, SampledField.constant(g, 1.0), unit, sg) == pytest.approx(1.0, abs=1e-12)
    f = SampledField(g, np.sign(np.sin(3 * g.axis())) + 0.0)
    delta = SampledField(g, np.eye(1, g.n, g.n // 2)[0])
    # discrete Young: the largest kernel mass over the scale nodes
    mass = max(apply_Pt(PAIR, t, delta).l1() / g.spacing for t in sg.t_values)
    assert PAIR.phi_mass(g) <= mass
    assert pt_sup_ratio(PAIR, f, unit, sg) <= mass * f.sup() + 1e-12


def test_pt_sup_ratio_saturates_for_log():
    g = GridSpec(1, 1024)
    f = SampledField(g, np.log(np.abs(2 * np.sin((g.axis() + g.spacing / 2) / 2))))
    w = builtin_weight("log")
    base = ScaleGrid.covering(g, PAIR)
    vals = [pt_sup_ratio(PAIR, f, w, ScaleGrid(base.m_min - k * 64, base.m_max + k * 64))
            for k in (0, 2, 4)]
    assert all(np.isfinite(vals))
    assert vals[2] == pytest.approx(vals[0], rel=1e-9)


def test_uniform_bounds_on_corpus():
    g = GridSpec(1, 1024)
    cfg = NormConfig.for_grid(g, PAIR)
    sg = cfg.scales
    w = builtin_weight("log")
    consts_q = {}
    for e in generate_corpus(10, 7):
        for j in (-1, 0, 1):
            f = e.sample(g, j)
            qsup = max(apply_Qt(PAIR, t, f).sup() for t in sg.t_values[::8])
            consts_q.setdefault(e.id, []).append(qsup / bmo_seminorm(f, cfg))
            assert pt_sup_ratio(PAIR, f, w, sg) <= 10 * bmo_local_norm(f, cfg)
    for c in consts_q.values():
        assert max(c) / min(c) <= 2.0
        assert max(c) < 10


def test_export_profiles(tmp_path):
    p = tmp_path / "profiles.csv"
    export_profiles_csv(PAIR, p, n=17)
    rows = p.read_text().splitlines()
    assert rows[0] == "rho,psi_hat,phi_hat" and len(rows) == 18
