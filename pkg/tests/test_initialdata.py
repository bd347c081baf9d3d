import numpy as np
import pytest

from aleflow import diagnostics as dg
from aleflow.curvature import curvature_of
from aleflow.errors import AmplitudeTooLarge, UnsupportedDimension
from aleflow.initialdata import (KINDS, InitialDataSpec, build,
                                 convergent_family, family_limit, smoothstep)


def test_spec_json_roundtrip():
    spec = InitialDataSpec(kind="conformal_bump", n=4, amplitude=0.2,
                           tau=1.5, q=6.0, seed=3, gamma_order=2)
    assert InitialDataSpec.from_json(spec.to_json()) == spec


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        InitialDataSpec(kind="wormhole")


def test_smoothstep_is_a_switch():
    r = np.linspace(0.0, 10.0, 101)
    s = smoothstep(r, 2.0, 4.0)
    assert np.all(s[r <= 2.0] == 0.0)
    assert np.all(s[r >= 4.0] == 1.0)
    assert np.all(np.diff(s) >= 0.0)


@pytest.mark.parametrize("kind", KINDS)
def test_all_kinds_build_valid_metrics(kind, small_grid):
    m = build(InitialDataSpec(kind=kind, amplitude=0.05, tau=1.0, q=5.0), small_grid)
    assert np.all(m.a > 0.0)
    assert np.all(np.diff(m.b) > 0.0)
    assert m.profile.tau == 1.0


@pytest.mark.parametrize("kind", ["flat", "conformal_bump", "perturbed_flat",
                                  "convergent_family_member"])
def test_exactly_flat_core(kind, small_grid):
    # all constructors leave the metric untouched below 2 r_min
    m = build(InitialDataSpec(kind=kind, amplitude=0.05, tau=1.0, q=5.0), small_grid)
    core = small_grid.r <= 2.0 * small_grid.r_min
    assert np.all(m.a[core] == 1.0)
    assert np.all(m.b[core] == small_grid.r[core])


def test_flat_kind_is_euclidean(small_grid):
    m = build(InitialDataSpec(kind="flat"), small_grid)
    assert np.all(m.a == 1.0)
    assert np.array_equal(m.b, small_grid.r)


def test_schwarzschild_exact_outside_collar(small_grid):
    m = build(InitialDataSpec(kind="schwarzschild_slice", mass_parameter=1.0),
              small_grid)
    r = small_grid.r
    out = r >= 8.0
    assert np.allclose(m.a[out], 1.0 / np.sqrt(1.0 - 2.0 / r[out]), rtol=1e-15)
    assert np.array_equal(m.b, r)
    core = r <= 4.0
    assert np.all(m.a[core] == 1.0)


def test_bump_has_prescribed_decay(bump):
    # |Rm| ~ r^-(2 + tau), R ~ r^-q for the tau = 1, q = 5 bump
    c = curvature_of(bump)
    assert dg.fit_field_decay(bump, c.riem_norm).exponent == \
        pytest.approx(2.0 + bump.profile.tau, abs=0.05)
    assert dg.fit_field_decay(bump, c.R).exponent == \
        pytest.approx(bump.profile.q, abs=0.05)


def test_perturbed_decay_at_least_envelope(small_grid):
    for seed in (0, 1, 2):
        m = build(InitialDataSpec(kind="perturbed_flat", amplitude=0.05,
                                  tau=1.0, seed=seed), small_grid)
        c = curvature_of(m)
        assert dg.fit_field_decay(m, c.riem_norm).exponent >= 2.9


def test_perturbed_seed_reproducible(small_grid):
    s = InitialDataSpec(kind="perturbed_flat", amplitude=0.05, tau=1.0, seed=11)
    m1, m2 = build(s, small_grid), build(s, small_grid)
    assert np.array_equal(m1.a, m2.a) and np.array_equal(m1.b, m2.b)
    m3 = build(InitialDataSpec(kind="perturbed_flat", amplitude=0.05,
                               tau=1.0, seed=12), small_grid)
    assert not np.array_equal(m1.a, m3.a)


def test_overlarge_amplitude_rejected(small_grid):
    with pytest.raises(AmplitudeTooLarge):
        build(InitialDataSpec(kind="conformal_bump", amplitude=-2.0, tau=1.0),
              small_grid)
    with pytest.raises(AmplitudeTooLarge):
        build(InitialDataSpec(kind="perturbed_flat", amplitude=5.0, tau=1.0,
                              seed=0), small_grid)


@pytest.mark.parametrize("n", [2, 7])
def test_unsupported_dimension(n, small_grid):
    with pytest.raises(UnsupportedDimension):
        build(InitialDataSpec(kind="flat", n=n), small_grid)


def test_harmonic_scalar_exponent_rejected(small_grid):
    # q = 3 makes the subleading term r^-1, harmonic in n = 3: the scalar
    # curvature rate cannot be prescribed through it
    with pytest.raises(ValueError):
        build(InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0,
                              q=3.0), small_grid)


def test_family_distances_halve(small_grid):
    base = InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0, q=5.0)
    limit = family_limit(base, small_grid)
    spec = dg.WeightedNormSpec(k=1)
    dists = [dg.mtau_distance(convergent_family(base, k, small_grid), limit, spec)
             for k in range(5)]
    assert all(d > 0.0 for d in dists)
    for d0, d1 in zip(dists, dists[1:]):
        assert 0.45 <= d1 / d0 <= 0.55


def test_family_negative_index_rejected(small_grid):
    base = InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0, q=5.0)
    with pytest.raises(ValueError):
        convergent_family(base, -1, small_grid)


def test_zero_step_family_member_is_the_limit(small_grid):
    base = InitialDataSpec(kind="conformal_bump", amplitude=0.1, tau=1.0,
                           q=5.0, family_step=0.0)
    member = convergent_family(base, 3, small_grid)
    limit = family_limit(base, small_grid)
    assert np.array_equal(member.a, limit.a)
    assert np.array_equal(member.b, limit.b)
