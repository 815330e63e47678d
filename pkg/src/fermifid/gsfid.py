"""Ground-state representation and fidelity between ground states.

The even-parity ground state is the pair condensate
``exp((1/2) sum_jk G_jk c_j^+ c_k^+)|0>`` with antisymmetric G given by the
Cayley transform of the polar factor T.  The fidelity between two ground
states reduces to ``sqrt(|det((T + T~)/2)|)``; for circulant models it
factors into a product of cosines of half phase differences.

Determinants are accumulated in log space throughout: at L ~ 1000 the
fidelity itself underflows double precision, so ``log_f`` is exposed next to
the clamped value.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (ConsistencyError, DegenerateEndpointError,
                     NotCayleyRepresentableError, OddParityError,
                     ParameterError)
from .solver import PolarForm, SpectralList, orthogonality_tol

# Unpaired phase differences are exactly 0 or pi in exact arithmetic; this
# classifies which, and anything in between is a bug.
TAU_ANGLE = 1e-6


@dataclass(frozen=True)
class GroundStateForm:
    """Pair-angle form of a ground state.

    ``angles`` holds one theta in [0, pi] per complex-conjugate pair of
    eigenvalues of T (real pairs count as theta = 0 or pi); ``unpaired``
    records leftover real eigenvalues (+-1, at most one per sign, only for
    odd L or odd multiplicities).  ``parity`` equals det T.
    """

    angles: np.ndarray
    unpaired: tuple[int, ...]
    parity: int
    G: np.ndarray | None = None


@dataclass(frozen=True)
class FidelityValue:
    """Fidelity F in [0, 1] together with its log and status flags."""

    F: float
    log_f: float
    parity_mismatch: bool = False
    degenerate: bool = False


def cayley_G(T: np.ndarray, min_sv: float = 1e-8) -> np.ndarray:
    """Cayley transform G = (T - 1)(T + 1)^{-1} of an orthogonal T.

    Raises
    ------
    OddParityError
        If det T = -1 (no even-parity pair condensate exists).
    NotCayleyRepresentableError
        If -1 is in the spectrum of T (T + 1 singular within ``min_sv``).
    """
    L = T.shape[0]
    sign, _ = np.linalg.slogdet(T)
    if sign < 0:
        raise OddParityError("det T = -1: odd-parity ground state has no G")
    TpI = T + np.eye(L)
    smin = scipy.linalg.svd(TpI, compute_uv=False, check_finite=False)[-1]
    if smin <= min_sv:
        raise NotCayleyRepresentableError(
            f"-1 in Sp(T) within {min_sv:g}: Cayley matrix undefined")
    G = np.linalg.solve(TpI.T, (T - np.eye(L)).T).T
    return (G - G.T) / 2.0  # antisymmetrize away factorization roundoff


def inverse_cayley(G: np.ndarray) -> np.ndarray:
    """Recover T = (1 + G)(1 - G)^{-1} from the Cayley matrix."""
    L = G.shape[0]
    return np.linalg.solve((np.eye(L) - G).T, (np.eye(L) + G).T).T


def state_angles(T: np.ndarray, tol: float | None = None) -> GroundStateForm:
    """Pair angles of the ground state from the spectrum of T.

    Complex-conjugate eigenvalue pairs e^{+-i theta} map to theta = |arg|;
    real eigenvalues are +-1 and pair among themselves (theta = 0 or pi),
    leaving at most one unpaired +1 and one unpaired -1.
    """
    if tol is None:
        tol = max(1e-10, orthogonality_tol(T))
    ev = np.linalg.eigvals(T)
    complex_mask = ev.imag > tol
    angles = list(np.abs(np.angle(ev[complex_mask])))
    real_ev = ev[np.abs(ev.imag) <= tol]
    n_minus = int(np.sum(real_ev.real < 0.0))
    n_plus = real_ev.size - n_minus
    angles += [0.0] * (n_plus // 2) + [np.pi] * (n_minus // 2)
    unpaired = ()
    if n_plus % 2:
        unpaired += (1,)
    if n_minus % 2:
        unpaired += (-1,)
    parity = -1 if n_minus % 2 else 1
    return GroundStateForm(angles=np.sort(np.asarray(angles)),
                           unpaired=unpaired, parity=parity)


def _log_fidelity_from_matrix(M: np.ndarray) -> float:
    sv = scipy.linalg.svd(M, compute_uv=False, check_finite=False)
    if np.any(sv <= 0.0):
        return -np.inf
    return float(0.5 * np.sum(np.log(sv)))


def fidelity(a: PolarForm, b: PolarForm) -> FidelityValue:
    """Ground-state fidelity F = sqrt(|det((T + T~)/2)|).

    The determinant is evaluated from singular values in log space.  Ground
    states of opposite parity are exactly orthogonal, so a parity mismatch
    short-circuits to F = 0.
    """
    if not (a.well_defined and b.well_defined):
        raise DegenerateEndpointError(
            "fidelity endpoint sits on a level crossing (det Z = 0)")
    if a.parity != b.parity:
        return FidelityValue(F=0.0, log_f=-np.inf, parity_mismatch=True)
    log_f = _log_fidelity_from_matrix((a.T + b.T) / 2.0)
    return FidelityValue(F=min(1.0, float(np.exp(log_f))), log_f=log_f)


def fidelity_circulant(s1: SpectralList, s2: SpectralList,
                       tau_angle: float = TAU_ANGLE) -> FidelityValue:
    """Fidelity between two circulant ground states from their spectra.

    F = delta * prod over conjugate pairs of |cos((theta~_j - theta_j)/2)|,
    where delta kills the product if any unpaired eigenvalue of T^{-1}T~
    equals -1 (a parity flip).  The product is accumulated in log space.
    """
    if s1.L != s2.L:
        raise ParameterError("spectral lists of different length")
    if (np.any(s1.moduli <= s1.singular_threshold)
            or np.any(s2.moduli <= s2.singular_threshold)):
        raise DegenerateEndpointError(
            "circulant endpoint has a vanishing eigenvalue")
    th1, th2 = s1.theta, s2.theta
    for j in s1.unpaired_indices:
        d = (th2[j] - th1[j]) % (2.0 * np.pi)
        d = min(d, 2.0 * np.pi - d)  # distance to 0 on the circle
        if d <= tau_angle:
            continue
        if abs(d - np.pi) <= tau_angle:
            return FidelityValue(F=0.0, log_f=-np.inf, parity_mismatch=True)
        raise ConsistencyError(
            f"unpaired phase difference {d:.3e} is neither 0 nor pi")
    pair = s1.paired_indices
    cosines = np.abs(np.cos((th2[pair] - th1[pair]) / 2.0))
    if np.any(cosines == 0.0):
        return FidelityValue(F=0.0, log_f=-np.inf)
    log_f = float(np.sum(np.log(cosines)))
    return FidelityValue(F=min(1.0, float(np.exp(log_f))), log_f=log_f)


def fidelity_from_G(G: np.ndarray, G2: np.ndarray) -> FidelityValue:
    """Fidelity from the coherent-state overlap of two Cayley matrices,

        F = |det(1 + G^T G2)|^{1/2}
            / [det(1 + G^T G) det(1 + G2^T G2)]^{1/4}.
    """
    L = G.shape[0]
    eye = np.eye(L)
    _, log_cross = np.linalg.slogdet(eye + G.T @ G2)
    _, log_a = np.linalg.slogdet(eye + G.T @ G)
    _, log_b = np.linalg.slogdet(eye + G2.T @ G2)
    log_f = 0.5 * log_cross - 0.25 * (log_a + log_b)
    return FidelityValue(F=min(1.0, float(np.exp(log_f))), log_f=float(log_f))
