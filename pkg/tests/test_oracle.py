import numpy as np
import pytest

from conftest import random_params
from fermifid.errors import SizeGuardError
from fermifid.model import Boundary, ModelParams, Sign, build
from fermifid.oracle import (annihilator_residuals, build_fock_hamiltonian,
                             fock_hamiltonian_gs, gs_from_G, overlap,
                             FockState)
from fermifid.solver import (canonical_decompose, det_sign,
                             ground_energy_and_gap, polar_T)


def test_decoupled_modes():
    # S3 with r = 0: A = -mu I, B = 0; all modes fill for mu > 0
    L, mu = 5, 1.7
    p = ModelParams(L=L, r=0, mu=mu, gamma=0.0,
                    boundary=Boundary.FREE_ENDS, sign=Sign.S3)
    res = fock_hamiltonian_gs(build(p))
    assert res.E0 == pytest.approx(-mu * L, abs=1e-12)
    assert res.parity == (1 if L % 2 == 0 else -1)
    assert np.allclose(res.densities, 1.0, atol=1e-12)


def test_energy_matches_solver():
    p = ModelParams(L=6, r=1, mu=1.3, gamma=0.7, boundary=Boundary.CYCLIC)
    m = build(p)
    res = fock_hamiltonian_gs(m)
    E0, _ = ground_energy_and_gap(m, canonical_decompose(m))
    assert res.E0 == pytest.approx(E0, abs=1e-9)


def test_parity_theorem_random(rng):
    # sign(det Z) equals the ground-state number parity
    checked = 0
    while checked < 50:
        p = random_params(rng)
        m = build(p)
        if abs(np.prod(canonical_decompose(m).lam)) < 1e-8:
            continue
        res = fock_hamiltonian_gs(m)
        if res.degenerate:
            continue
        assert res.parity == det_sign(m.Z), f"parity mismatch at {p}"
        checked += 1


def test_full_spectrum_is_free_fermion_sum(rng):
    for _ in range(5):
        p = random_params(rng, L=int(rng.integers(2, 7)))
        m = build(p)
        res = fock_hamiltonian_gs(m)
        spec = canonical_decompose(m)
        E0, _ = ground_energy_and_gap(m, spec)
        lam = spec.lam
        sums = [E0 + sum(lam[k] for k in range(p.L) if b >> k & 1)
                for b in range(1 << p.L)]
        assert np.allclose(np.sort(sums), res.energies, atol=1e-8)


def test_overlap_basics(rng):
    p = random_params(rng, L=5)
    res = fock_hamiltonian_gs(build(p))
    assert overlap(res.gs, res.gs) == pytest.approx(1.0, abs=1e-12)
    # opposite-parity states have disjoint support
    v = np.zeros(1 << 5)
    v[0b00001] = 1.0
    odd = FockState(amplitudes=v, L=5)
    if res.parity == 1:
        assert overlap(res.gs, odd) == pytest.approx(0.0, abs=1e-12)


def test_gs_from_G_vacuum():
    state = gs_from_G(np.zeros((4, 4)))
    assert state.amplitudes[0] == pytest.approx(1.0)
    assert np.allclose(state.amplitudes[1:], 0.0)


def test_gs_from_G_single_pair():
    g = 0.8
    G = np.array([[0.0, g], [-g, 0.0]])
    state = gs_from_G(G)
    expected = np.array([1.0, 0.0, 0.0, g]) / np.hypot(1.0, g)
    assert np.allclose(state.amplitudes, expected, atol=1e-12)


def test_annihilators_kill_ground_state(rng):
    checked = 0
    while checked < 6:
        p = random_params(rng, L=int(rng.integers(2, 7)))
        m = build(p)
        res = fock_hamiltonian_gs(m)
        if res.degenerate:
            continue
        resid = annihilator_residuals(canonical_decompose(m), res.gs)
        assert np.max(resid) < 1e-9
        checked += 1


def test_densities_match_canonical_spectrum(rng):
    checked = 0
    while checked < 6:
        p = random_params(rng, L=int(rng.integers(2, 8)))
        m = build(p)
        res = fock_hamiltonian_gs(m)
        spec = canonical_decompose(m)
        if res.degenerate or not polar_T(spec, m).well_defined:
            continue
        assert np.allclose(res.densities, spec.site_densities(), atol=1e-9)
        checked += 1


def test_size_guard():
    p = ModelParams(L=13, r=1, mu=1.0, gamma=0.5, boundary=Boundary.CYCLIC)
    with pytest.raises(SizeGuardError):
        build_fock_hamiltonian(build(p))


def test_hamiltonian_is_symmetric(rng):
    p = random_params(rng, L=5)
    H = build_fock_hamiltonian(build(p))
    assert np.array_equal(H, H.T) or np.allclose(H, H.T, atol=1e-14)
