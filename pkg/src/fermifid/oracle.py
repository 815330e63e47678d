"""Brute-force Fock-space reference for small systems.

Everything here works on the full 2^L-dimensional Hilbert space, with basis
states indexed by occupation bitmasks (bit k set = mode k occupied).  Mode k
acts with the fermionic sign (-1)^(number of occupied modes with index < k);
every cross-check in the test suite depends on this convention, so it is
frozen here and nowhere else.

The point of this module is to be obviously correct rather than fast: dense
matrices, dense symmetric eigensolver, no cleverness.  A size guard keeps
L <= 12.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SizeGuardError
from .model import CouplingModel
from .solver import CanonicalSpectrum

MAX_ORACLE_L = 12
DEGENERACY_TOL = 1e-10


@dataclass(frozen=True)
class FockState:
    """State vector over occupation bitmasks (real amplitudes suffice:
    every Hamiltonian here is real symmetric)."""

    amplitudes: np.ndarray
    L: int

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class OracleResult:
    E0: float
    gs: FockState
    parity: int
    degenerate: bool
    densities: np.ndarray
    energies: np.ndarray


def _sign(mask: int, k: int) -> float:
    return -1.0 if bin(mask & ((1 << k) - 1)).count("1") % 2 else 1.0


def _create(mask: int, k: int) -> tuple[int, float]:
    if mask >> k & 1:
        return 0, 0.0
    return mask | (1 << k), _sign(mask, k)


def _annihilate(mask: int, k: int) -> tuple[int, float]:
    if not (mask >> k & 1):
        return 0, 0.0
    return mask ^ (1 << k), _sign(mask, k)


def _guard(L: int):
    if L > MAX_ORACLE_L:
        raise SizeGuardError(
            f"L={L} exceeds the brute-force guard {MAX_ORACLE_L}")


def build_fock_hamiltonian(model: CouplingModel) -> np.ndarray:
    """Dense 2^L x 2^L matrix of H = c+ A c + (1/2)(c+ B c+ + h.c.)."""
    L = model.params.L
    _guard(L)
    A, B = model.A, model.B
    dim = 1 << L
    H = np.zeros((dim, dim))
    for m in range(dim):
        for j in range(L):
            mj, sj = _annihilate(m, j)
            if sj:
                for i in range(L):
                    if A[i, j]:
                        m2, si = _create(mj, i)
                        if si:
                            H[m2, m] += A[i, j] * sj * si
            mj, sj = _create(m, j)
            if sj:
                for i in range(L):
                    if B[i, j]:
                        m2, si = _create(mj, i)
                        if si:
                            H[m2, m] += 0.5 * B[i, j] * sj * si
        # hermitian conjugate of the pairing term: (1/2) B_ij c_j c_i
        for i in range(L):
            mi, si = _annihilate(m, i)
            if si:
                for j in range(L):
                    if B[i, j]:
                        m2, sj = _annihilate(mi, j)
                        if sj:
                            H[m2, m] += 0.5 * B[i, j] * sj * si
    return H


def state_parity(state: FockState, tol: float = 1e-8) -> int:
    """Common number parity (-1)^N of the support, 0 if indefinite."""
    support = np.nonzero(np.abs(state.amplitudes) > tol)[0]
    parities = {bin(int(m)).count("1") % 2 for m in support}
    if len(parities) != 1:
        return 0
    return 1 if parities.pop() == 0 else -1


def fock_hamiltonian_gs(model: CouplingModel) -> OracleResult:
    """Exact ground state of the full Fock-space Hamiltonian."""
    H = build_fock_hamiltonian(model)
    w, V = np.linalg.eigh(H)
    L = model.params.L
    gs = FockState(amplitudes=V[:, 0], L=L)
    masks = np.arange(1 << L)
    occ = (masks[:, None] >> np.arange(L)[None, :]) & 1
    densities = (gs.amplitudes ** 2) @ occ
    return OracleResult(E0=float(w[0]), gs=gs,
                        parity=state_parity(gs),
                        degenerate=bool(w[1] - w[0] < DEGENERACY_TOL),
                        densities=densities, energies=w)


def overlap(a: FockState, b: FockState) -> float:
    """Overlap modulus |<a|b>|."""
    if a.L != b.L:
        raise ValueError("states live on different mode counts")
    return float(abs(a.amplitudes @ b.amplitudes))


def gs_from_G(G: np.ndarray) -> FockState:
    """Normalized pair condensate exp((1/2) sum G_jk c_j^+ c_k^+)|0>.

    The exponential series terminates after floor(L/2) applications of the
    pair-creation operator.
    """
    L = G.shape[0]
    _guard(L)
    dim = 1 << L
    v = np.zeros(dim)
    v[0] = 1.0
    term = v.copy()
    pairs = [(j, k) for j in range(L) for k in range(j + 1, L) if G[j, k]]
    for n in range(1, L // 2 + 1):
        new = np.zeros(dim)
        for m in np.nonzero(term)[0]:
            amp = term[m]
            for j, k in pairs:
                m1, s1 = _create(int(m), k)
                if s1:
                    m2, s2 = _create(m1, j)
                    if s2:
                        new[m2] += amp * G[j, k] * s1 * s2
        term = new / n
        v += term
    return FockState(amplitudes=v / np.linalg.norm(v), L=L)


def apply_mode_operator(state: FockState, coeff_c: np.ndarray,
                        coeff_cdag: np.ndarray) -> FockState:
    """Apply sum_k (coeff_c[k] c_k + coeff_cdag[k] c_k^+) to a state."""
    dim = 1 << state.L
    out = np.zeros(dim)
    for m in np.nonzero(state.amplitudes)[0]:
        amp = state.amplitudes[m]
        for k in range(state.L):
            if coeff_c[k]:
                m1, s = _annihilate(int(m), k)
                if s:
                    out[m1] += coeff_c[k] * s * amp
            if coeff_cdag[k]:
                m1, s = _create(int(m), k)
                if s:
                    out[m1] += coeff_cdag[k] * s * amp
    return FockState(amplitudes=out, L=state.L)


def annihilator_residuals(spec: CanonicalSpectrum,
                          state: FockState) -> np.ndarray:
    """Norms of eta_j|state> for the diagonalizing operators
    eta_j = sum_k (g_jk c_k + h_jk c_k^+); all vanish on the ground state."""
    return np.array([
        apply_mode_operator(state, spec.g[j], spec.h_pair[j]).norm()
        for j in range(spec.L)
    ])
