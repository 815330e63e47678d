"""Single-site entanglement of the fully-connected cyclic graph.

The one-site reduced density matrix is diagonal with occupation n, so the
single-site entanglement is the binary entropy of the density,
S_i = -n log2 n - (1-n) log2(1-n).  The density follows from the uniform
diagonal of the circulant polar factor, T_ii = 1 - 2n, which in turn is a
spectral sum over the eigenvalues zeta_j of Z.  Thermodynamic-limit closed
forms exist on both sides of the cone |gamma| = |mu - 1|.

Entropies are base 2; the divergence laws quoted in the derivative
diagnostics use natural logs, and tests treat them as asymptotic shapes
(ratio convergence), not absolute constants.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePointError, ParameterError, SingularPointError
from .solver import SpectralList


def binary_entropy(n: float) -> float:
    """Base-2 binary entropy with the 0 log 0 = 0 convention."""
    if n <= 0.0 or n >= 1.0:
        return 0.0
    return float(-n * np.log2(n) - (1.0 - n) * np.log2(1.0 - n))


@dataclass(frozen=True)
class SingleSiteRecord:
    """Uniform diagonal of T, site density, and single-site entanglement."""

    tii: float
    n: float
    si: float


def single_site(spectral: SpectralList) -> SingleSiteRecord:
    """Single-site entanglement from the circulant spectrum.

    Valid for the fully-connected cyclic graph at mu > 1 - L, where the
    unpaired eigenvalue zeta_1 = mu + L - 1 is positive and

        T_ii = (1/L) [1 + sum_{j>=2} Re zeta_j / |zeta_j|].
    """
    z = spectral.zeta
    if z[0].real <= 0.0:
        raise ParameterError(
            "requires mu > 1 - L so that the uniform mode is positive")
    moduli = spectral.moduli
    if np.any(moduli <= spectral.singular_threshold):
        raise DegeneratePointError(
            "vanishing eigenvalue: single-site density undefined here")
    tii = float((1.0 + np.sum(z.real[1:] / moduli[1:])) / spectral.L)
    n = (1.0 - tii) / 2.0
    return SingleSiteRecord(tii=tii, n=n, si=binary_entropy(n))


def tii_tdl(mu: float, gamma: float) -> float:
    """Thermodynamic limit of T_ii for the fully-connected cyclic graph.

    Two branches meet on the cone |gamma| = |mu - 1|:

        |gamma| > |mu-1|: (2/pi) (mu-1)/sqrt(g^2-a^2) * ln((sqrt(g^2-a^2)+g)/a)
        |gamma| < |mu-1|: (2/pi) (mu-1)/sqrt(a^2-g^2) * arcsin(sqrt(a^2-g^2)/a)

    with a = |mu-1|, g = |gamma|; on the cone both reduce to
    (2/pi) sign(mu-1).
    """
    if mu == 1.0 and gamma == 0.0:
        raise SingularPointError("T_ii has no limit at (mu, gamma) = (1, 0)")
    a, g = abs(mu - 1.0), abs(gamma)
    if a == 0.0:
        return 0.0  # half filling: -(2/pi) (mu-1) ln|mu-1| / |gamma| -> 0
    if a == g:
        return (2.0 / np.pi) * np.sign(mu - 1.0)
    if g > a:
        s = np.sqrt(g * g - a * a)
        return float((2.0 / np.pi) * (mu - 1.0) / s * np.log((s + g) / a))
    s = np.sqrt(a * a - g * g)
    return float((2.0 / np.pi) * (mu - 1.0) / s * np.arcsin(s / a))


def si_tdl(mu: float, gamma: float) -> float:
    """Thermodynamic-limit single-site entanglement."""
    return binary_entropy((1.0 - tii_tdl(mu, gamma)) / 2.0)


def entropy_derivative_diag(mu: float, gamma: float,
                            step: float = 1e-4) -> dict[str, float]:
    """Finite-difference derivatives of the TDL single-site entanglement.

    Returns ``dSi_dmu``, ``d2Si_dmu2`` and ``dSi_dgamma``.  Near mu = 1 the
    second mu-derivative diverges like -log^2|mu-1|; near gamma = 0 the
    gamma-derivative diverges like -sign(gamma) log(|gamma|/pi|mu-1|)/|mu-1|.
    """
    stencil = [(mu + k * step, gamma) for k in (-1, 0, 1)]
    stencil += [(mu, gamma + k * step) for k in (-1, 1)]
    for pm, pg in stencil:
        if pm == 1.0 and pg == 0.0:
            raise SingularPointError("stencil touches (mu, gamma) = (1, 0)")
    si = {d: si_tdl(*p) for d, p in zip(("m-", "0", "m+", "g-", "g+"), stencil)}
    return {
        "dSi_dmu": (si["m+"] - si["m-"]) / (2.0 * step),
        "d2Si_dmu2": (si["m+"] + si["m-"] - 2.0 * si["0"]) / step ** 2,
        "dSi_dgamma": (si["g+"] - si["g-"]) / (2.0 * step),
    }
