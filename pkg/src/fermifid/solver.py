"""Canonical decomposition of Z and single-particle spectra.

The central object is the factorization ``Phi Z Psi^T = Lambda`` with
orthogonal ``Phi``, ``Psi`` and a nonnegative diagonal ``Lambda`` of
single-particle energies.  The orthogonal part of the polar decomposition
``Z = sqrt(Z Z^T) T`` follows as ``T = Phi^T Psi``; its determinant sign is
the fermion-number parity of the ground state.

For cyclic models every matrix involved is circulant, and the whole spectrum
comes from the discrete Fourier transform of the first row in O(L log L)
instead of an O(L^3) factorization.  Closed forms for the eigenvalues of the
variable-range and fully-connected graphs are provided as well.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.linalg

from .errors import ParameterError
from .model import Boundary, CouplingModel, ModelParams, Sign, cyclic_first_rows

_EPS = np.finfo(float).eps


def orthogonality_tol(Z: np.ndarray) -> float:
    """Tolerance for orthogonality/reconstruction checks, scaled for O(L^3)
    rounding accumulation."""
    L = Z.shape[0]
    return 1e-10 * max(1.0, np.max(np.abs(Z)) * L)


@dataclass(frozen=True)
class CanonicalSpectrum:
    """Result of the canonical factorization Phi Z Psi^T = Lambda.

    ``lam`` is sorted in descending order (LAPACK convention); the gap is its
    last entry.  ``g = (Phi + Psi)/2`` and ``h_pair = (Phi - Psi)/2`` are the
    coefficient blocks of the diagonalizing mode operators.
    """

    lam: np.ndarray
    phi: np.ndarray
    psi: np.ndarray

    @property
    def L(self) -> int:
        return self.lam.shape[0]

    @cached_property
    def g(self) -> np.ndarray:
        return (self.phi + self.psi) / 2.0

    @cached_property
    def h_pair(self) -> np.ndarray:
        return (self.phi - self.psi) / 2.0

    @property
    def gap(self) -> float:
        return float(self.lam[-1])

    @property
    def singular_threshold(self) -> float:
        # standard rank-decision scale for a backward-stable SVD
        return self.L * _EPS * float(self.lam[0]) if self.lam[0] > 0 else _EPS

    def site_densities(self) -> np.ndarray:
        """Ground-state mode occupations <n_k> = (h_pair^T h_pair)_kk."""
        return np.einsum("jk,jk->k", self.h_pair, self.h_pair)


@dataclass(frozen=True)
class PolarForm:
    """Orthogonal polar factor T of Z with its parity and gap.

    ``well_defined`` is False at level crossings (det Z = 0), where T is as
    undefined as the azimuthal angle at the origin of polar coordinates.
    """

    T: np.ndarray
    parity: int
    gap: float
    well_defined: bool


def canonical_decompose(model: CouplingModel) -> CanonicalSpectrum:
    """Factor Z into orthogonal Phi, Psi and nonnegative Lambda.

    A single real SVD of Z provides both orthogonal factors at once
    (Phi = U^T, Psi = V^T), so rows of Psi belonging to zero singular values
    come out of the orthogonal completion of the range of Z^T rather than
    from an unrelated diagonalization of Z^T Z.
    """
    U, s, Vh = scipy.linalg.svd(model.Z, check_finite=False)
    return CanonicalSpectrum(lam=s, phi=U.T, psi=Vh)


def det_sign(Z: np.ndarray) -> int:
    """Sign of det Z from pivoted-LU sign tracking (never the raw value,
    which overflows for L in the hundreds)."""
    sign, _ = np.linalg.slogdet(Z)
    return int(sign)


def polar_T(spec: CanonicalSpectrum, model: CouplingModel) -> PolarForm:
    """Orthogonal polar factor T = Phi^T Psi with parity and gap."""
    T = spec.phi.T @ spec.psi
    gap = spec.gap
    well = gap > spec.singular_threshold
    parity = det_sign(model.Z)
    if parity == 0:
        sign, _ = np.linalg.slogdet(T)
        parity = int(sign)
    return PolarForm(T=T, parity=parity, gap=gap, well_defined=well)


def ground_energy_and_gap(model: CouplingModel,
                          spec: CanonicalSpectrum) -> tuple[float, float]:
    """Ground-state energy E0 = Tr(A - Lambda)/2 and the gap min Lambda."""
    E0 = (np.trace(model.A) - np.sum(spec.lam)) / 2.0
    return float(E0), spec.gap


@dataclass(frozen=True)
class SpectralList:
    """Eigenvalues zeta_j of a circulant Z in DFT index order.

    Index 0 (and index L/2 for even L) hold the unpaired real eigenvalues;
    indices j and L - j are complex conjugates of each other.
    """

    zeta: np.ndarray

    @property
    def L(self) -> int:
        return self.zeta.shape[0]

    @property
    def theta(self) -> np.ndarray:
        """Phases arg(zeta_j) on the branch (-pi, pi]."""
        return np.angle(self.zeta)

    @property
    def moduli(self) -> np.ndarray:
        return np.abs(self.zeta)

    @property
    def paired_indices(self) -> np.ndarray:
        """One index per complex-conjugate pair (the lower half)."""
        M = (self.L - 1) // 2
        return np.arange(1, M + 1)

    @property
    def unpaired_indices(self) -> list[int]:
        """Indices of the unpaired real eigenvalues."""
        out = [0]
        if self.L % 2 == 0:
            out.append(self.L // 2)
        return out

    @property
    def singular_threshold(self) -> float:
        top = float(np.max(self.moduli))
        return self.L * _EPS * top if top > 0 else _EPS

    def lam_descending(self) -> np.ndarray:
        """Moduli sorted like the dense path's singular values."""
        return np.sort(self.moduli)[::-1]

    def det_sign(self) -> int:
        """Sign of det Z: conjugate pairs contribute |zeta|^2 > 0, so only
        the unpaired real eigenvalues decide."""
        s = 1.0
        for j in self.unpaired_indices:
            s *= np.sign(self.zeta[j].real)
        return int(s)


def circulant_eigvals(first_row: np.ndarray) -> SpectralList:
    """Eigenvalues of a circulant matrix from the DFT of its first row."""
    row = np.asarray(first_row, dtype=float)
    return SpectralList(zeta=np.fft.fft(row))


def zeta_variable_range(params: ModelParams) -> SpectralList:
    """Closed-form circulant spectrum of the variable-range cyclic model.

    Evaluates, for kappa_j = 2 pi (j-1)/L,

        -zeta_j = mu + (-1)^j [r = L/2, L even]
                  + 2 sin(r kappa/2)/sin(kappa/2)
                    * [cos((1+r) kappa/2) + i gamma sin((1+r) kappa/2)]

    in the S3 convention (the j = 1 ratio is replaced by its limit r), then
    applies the sign convention of ``params``.
    """
    if params.boundary is not Boundary.CYCLIC:
        raise ParameterError("closed-form spectrum requires a cyclic boundary")
    L, r = params.L, params.r
    j = np.arange(1, L + 1)
    kappa = 2.0 * np.pi * (j - 1) / L
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.sin(r * kappa / 2.0) / np.sin(kappa / 2.0)
    ratio[0] = r
    antipodal = 1.0 if (L % 2 == 0 and 2 * r == L) else 0.0
    minus_zeta = (params.mu
                  + ((-1.0) ** j) * antipodal
                  + 2.0 * ratio * (np.cos((1 + r) * kappa / 2.0)
                                   + 1j * params.gamma * np.sin((1 + r) * kappa / 2.0)))
    zeta = -minus_zeta if params.sign is Sign.S3 else minus_zeta
    return SpectralList(zeta=zeta)


def zeta_fully_connected(params: ModelParams) -> SpectralList:
    """Fully-connected cyclic spectrum in the S4 convention.

    zeta_1 = mu + L - 1, and for j = 2..L the remaining eigenvalues sit on
    the vertical line Re zeta = mu - 1 with imaginary parts
    gamma [1 + (-1)^j] cot(kappa_j/2) for even L, and the alternating
    cot/tan quarter-angle pattern for odd L.
    """
    if params.boundary is not Boundary.CYCLIC or not params.fully_connected:
        raise ParameterError("requires the fully-connected cyclic graph")
    if params.sign is not Sign.S4:
        raise ParameterError("closed form is stated in the S4 convention")
    zeta = np.empty(params.L, dtype=complex)
    zeta[0] = params.mu + params.L - 1.0
    zeta[1:] = (params.mu - 1.0) + 1j * params.gamma * _fc_gamma_slope(params.L)
    return SpectralList(zeta=zeta)


def _fc_gamma_slope(L: int) -> np.ndarray:
    """d Im(zeta_j)/d gamma for j = 2..L of the fully-connected cyclic graph."""
    j = np.arange(2, L + 1)
    kappa = 2.0 * np.pi * (j - 1) / L
    even = (1.0 + (-1.0) ** j) / 2.0  # 1 on even j, 0 on odd j
    if L % 2 == 0:
        return 2.0 * even / np.tan(kappa / 2.0)
    return even / np.tan(kappa / 4.0) - (1.0 - even) * np.tan(kappa / 4.0)


def spectral_list(params: ModelParams) -> SpectralList:
    """Closed-form spectrum of any cyclic model (O(L) fast path)."""
    return zeta_variable_range(params)


def cyclic_det_sign(params: ModelParams) -> int:
    """Sign of det Z for a cyclic model without dense algebra."""
    return spectral_list(params).det_sign()


def cyclic_ground_energy(params: ModelParams) -> float:
    """E0 = sum_j (Re zeta_j - |zeta_j|)/2 for a cyclic model."""
    z = spectral_list(params).zeta
    return float(np.sum(z.real - np.abs(z)) / 2.0)


def dense_from_rows(params: ModelParams) -> np.ndarray:
    """Dense Z of a cyclic model, for cross-checks of the fast path."""
    _, _, z_row = cyclic_first_rows(params)
    L = params.L
    shift = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L
    return z_row[shift]
