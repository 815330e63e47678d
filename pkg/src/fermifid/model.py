"""Coupling matrices for variable-range fermionic XY graphs.

A model is specified by the number of modes ``L``, the coupling range ``r``,
the chemical potential ``mu``, the pairing anisotropy ``gamma``, the boundary
condition (free ends or cyclic), and an overall sign convention.  The
quadratic Hamiltonian is encoded by a symmetric hopping matrix ``A``, an
antisymmetric pairing matrix ``B``, and their difference ``Z = A - B``, which
carries the full ground-state information.

Construction is exact: entries are small integers times ``mu - 1`` or
``gamma``, so symmetry and antisymmetry hold to the last bit.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import ParameterError

# Dense matrices downstream go through O(L^3) factorizations; refuse sizes
# that would silently take hours.
MAX_DENSE_L = 4096


class Boundary(Enum):
    FREE_ENDS = "free"
    CYCLIC = "cyclic"


class Sign(Enum):
    """Overall sign of the Hamiltonian.

    S3 is the chain convention in which every coupling enters with a leading
    minus sign (A_jj = -mu).  S4 flips the global sign (A -> -A, B -> -B,
    Z -> -Z), which leaves the phase diagram unchanged.
    """

    S3 = "s3"
    S4 = "s4"


def full_range(L: int, boundary: Boundary) -> int:
    """Coupling range that makes the graph fully connected."""
    return L - 1 if boundary is Boundary.FREE_ENDS else L // 2


@dataclass(frozen=True)
class ModelParams:
    """Parameter point of a variable-range model.

    Parameters
    ----------
    L : int
        Number of fermionic modes, at least 2.
    r : int
        Coupling range; 0..L-1 for free ends, 0..L//2 for cyclic.
    mu : float
        Chemical potential.
    gamma : float
        Pairing anisotropy.
    boundary : Boundary
        Free ends or periodic.
    sign : Sign
        Overall sign convention, default S4.
    """

    L: int
    r: int
    mu: float
    gamma: float
    boundary: Boundary = Boundary.CYCLIC
    sign: Sign = Sign.S4

    def __post_init__(self):
        if self.L < 2:
            raise ParameterError(f"need at least two modes, got L={self.L}")
        if self.L > MAX_DENSE_L:
            raise ParameterError(
                f"L={self.L} exceeds the dense-size cap {MAX_DENSE_L}")
        rmax = full_range(self.L, self.boundary)
        if not 0 <= self.r <= rmax:
            raise ParameterError(
                f"range r={self.r} outside 0..{rmax} for {self.boundary.value}"
                f" boundary at L={self.L}")

    @property
    def fully_connected(self) -> bool:
        return self.r == full_range(self.L, self.boundary)

    def displaced(self, dmu: float = 0.0, dgamma: float = 0.0) -> "ModelParams":
        """Same model at (mu + dmu, gamma + dgamma)."""
        return replace(self, mu=self.mu + dmu, gamma=self.gamma + dgamma)


@dataclass(frozen=True)
class CouplingModel:
    """Matrices of one parameter point: symmetric A, antisymmetric B, Z = A - B."""

    params: ModelParams
    A: np.ndarray
    B: np.ndarray
    Z: np.ndarray


def _signed(A: np.ndarray, B: np.ndarray, sign: Sign):
    if sign is Sign.S4:
        A, B = -A, -B
    return A, B


def build_free_ends(params: ModelParams) -> CouplingModel:
    """Build the Toeplitz coupling matrices of a free-ends graph.

    In the S3 convention A_jk = -[(mu-1) delta_jk + theta(r - |j-k|)] and
    B_jk = -gamma sign(k-j) theta(r - |j-k|), with theta(0) = 1 and
    sign(0) = 0; S4 flips both signs.
    """
    if params.boundary is not Boundary.FREE_ENDS:
        raise ParameterError("build_free_ends requires a free-ends boundary")
    L, r = params.L, params.r
    idx = np.arange(L)
    dist = np.abs(np.subtract.outer(idx, idx))
    sign_kj = -np.sign(np.subtract.outer(idx, idx))  # sign(k - j) at [j, k]
    theta = (dist <= r).astype(float)
    A = -((params.mu - 1.0) * np.eye(L) + theta)
    B = -params.gamma * sign_kj * theta
    A, B = _signed(A, B, params.sign)
    return CouplingModel(params, A, B, A - B)


def cyclic_first_rows(params: ModelParams) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """First rows of the circulant A, B, Z without building dense matrices.

    Returns
    -------
    (a_row, b_row, z_row) : length-L arrays
        Row ``c`` entries at cyclic distance ``c`` from the diagonal.
    """
    if params.boundary is not Boundary.CYCLIC:
        raise ParameterError("cyclic rows require a cyclic boundary")
    L, r = params.L, params.r
    c = np.arange(L)
    near = (c <= r).astype(float)
    wrap = (c >= L - r).astype(float)
    a = -(near + wrap)
    a[0] = -params.mu
    if 2 * r == L:
        # antipodal bond: the two wrap images coincide and must count once
        a[r] = -1.0
    b = -params.gamma * (near - wrap)
    b[0] = 0.0
    if params.sign is Sign.S4:
        a, b = -a, -b
    return a, b, a - b


def build_cyclic(params: ModelParams) -> CouplingModel:
    """Build the circulant coupling matrices of a cyclic graph.

    Each row is the right rotation of the previous one; the wrap-around step
    function adds the couplings that cross the boundary.  For even L at
    r = L/2 the antipodal pairing amplitudes cancel, so B equals the
    r = L/2 - 1 construction while A keeps a single antipodal bond.
    """
    a_row, b_row, _ = cyclic_first_rows(params)
    L = params.L
    shift = (np.arange(L)[None, :] - np.arange(L)[:, None]) % L
    A = a_row[shift]
    B = b_row[shift]
    return CouplingModel(params, A, B, A - B)


def build(params: ModelParams) -> CouplingModel:
    """Build the coupling matrices for either boundary condition."""
    if params.boundary is Boundary.FREE_ENDS:
        return build_free_ends(params)
    return build_cyclic(params)
