"""Criticality diagnostics built on the fidelity Hessian.

The degree of criticality of a parameter point is the smallest eigenvalue
h of the Hessian of the fidelity F(X) at zero displacement, computed either
by central finite differences (any model) or, for the fully-connected cyclic
graph, from the closed-form sum

    h = -(1/4) [(mu-1)^2 + gamma^2] S,
    S = sum over conjugate pairs of (d Im zeta_j / d gamma)^2 / |zeta_j|^4,

whose other eigenvalue is identically zero.  The module also locates
first-order boundaries (sign changes of det Z), runs finite-size peak scans
with data collapse, differentiates the ground-state energy density, and
evaluates the closed-form derivative of the polar factor at gamma = 0 for
the free-ends fully-connected graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (DegenerateEndpointError, ParameterError,
                     SingularPointError, StencilCrossingError, WindowError)
from .gsfid import fidelity, fidelity_circulant
from .model import Boundary, ModelParams, Sign, build, full_range
from .solver import (canonical_decompose, cyclic_ground_energy, det_sign,
                     ground_energy_and_gap, polar_T, spectral_list,
                     _fc_gamma_slope)


def default_fd_step(mu: float, gamma: float) -> float:
    """Balance O(step^2) truncation against 1/step^2 roundoff amplification
    for a fidelity accurate to ~1e-12."""
    return 1e-4 * max(1.0, abs(mu) + abs(gamma))


@dataclass(frozen=True)
class HessianAtZero:
    """Second derivatives of the fidelity at zero displacement and the
    resulting criticality measure h_crit (the minimum eigenvalue)."""

    d2_mumu: float
    d2_gamgam: float
    d2_mugam: float
    h_crit: float
    zero_eigvec: np.ndarray


def _close_hessian(d2_mm: float, d2_gg: float, d2_mg: float) -> HessianAtZero:
    tr = d2_mm + d2_gg
    disc = np.hypot(d2_mm - d2_gg, 2.0 * d2_mg)
    h = 0.5 * (tr - disc)
    lam_max = 0.5 * (tr + disc)
    v = np.array([d2_mg, lam_max - d2_mm])
    if np.linalg.norm(v) < 1e-300:
        v = np.array([1.0, 0.0]) if d2_mm >= d2_gg else np.array([0.0, 1.0])
    return HessianAtZero(d2_mumu=d2_mm, d2_gamgam=d2_gg, d2_mugam=d2_mg,
                         h_crit=float(h),
                         zero_eigvec=v / np.linalg.norm(v))


class _CirculantProbe:
    """O(L) fidelity/parity evaluations around a cyclic parameter point."""

    def __init__(self, params: ModelParams):
        self.params = params

    def state(self, dmu: float, dgamma: float):
        return spectral_list(self.params.displaced(dmu, dgamma))

    @staticmethod
    def parity(state) -> int:
        return state.det_sign()

    @staticmethod
    def degenerate(state) -> bool:
        return bool(np.any(state.moduli <= state.singular_threshold))

    @staticmethod
    def fid(center, state) -> float:
        return fidelity_circulant(center, state).F


class _DenseProbe:
    """Dense-SVD fidelity/parity evaluations for free-ends models."""

    def __init__(self, params: ModelParams):
        self.params = params

    def state(self, dmu: float, dgamma: float):
        m = build(self.params.displaced(dmu, dgamma))
        return polar_T(canonical_decompose(m), m)

    @staticmethod
    def parity(state) -> int:
        return state.parity

    @staticmethod
    def degenerate(state) -> bool:
        return not state.well_defined

    @staticmethod
    def fid(center, state) -> float:
        return fidelity(center, state).F


def _probe_for(params: ModelParams, force_dense: bool = False):
    if params.boundary is Boundary.CYCLIC and not force_dense:
        return _CirculantProbe(params)
    return _DenseProbe(params)


_STENCIL = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (1, -1), (-1, 1))


def _second_diffs(probe, center, d: float) -> tuple[float, float, float]:
    states = {}
    for sx, sy in _STENCIL:
        st = probe.state(sx * d, sy * d)
        if probe.degenerate(st):
            raise DegenerateEndpointError(
                "stencil point sits on a level crossing")
        states[(sx, sy)] = st
    parities = {probe.parity(st) for st in states.values()}
    parities.add(probe.parity(center))
    if len(parities) > 1:
        raise StencilCrossingError(
            "finite-difference stencil straddles a first-order boundary")
    F = {k: probe.fid(center, st) for k, st in states.items()}
    d2_mm = (F[(1, 0)] + F[(-1, 0)] - 2.0) / d**2
    d2_gg = (F[(0, 1)] + F[(0, -1)] - 2.0) / d**2
    d2_mg = (F[(1, 1)] + F[(-1, -1)] - F[(1, -1)] - F[(-1, 1)]) / (4.0 * d**2)
    return d2_mm, d2_gg, d2_mg


def hessian_fd(params: ModelParams, delta: float | None = None,
               richardson: bool = False,
               force_dense: bool = False) -> HessianAtZero:
    """Fidelity Hessian at a parameter point by central second differences.

    Uses the circulant fast path for cyclic models and dense polar factors
    otherwise (``force_dense=True`` disables the fast path for cross-checks).
    ``richardson=True`` combines steps delta and delta/2 to cancel the
    leading O(delta^2) truncation term.

    Raises
    ------
    StencilCrossingError
        If det Z changes sign anywhere on the stencil.
    DegenerateEndpointError
        If the centre or a stencil point has det Z = 0.
    """
    if delta is None:
        delta = default_fd_step(params.mu, params.gamma)
    probe = _probe_for(params, force_dense)
    center = probe.state(0.0, 0.0)
    if probe.degenerate(center):
        raise DegenerateEndpointError("centre point has det Z = 0")
    diffs = _second_diffs(probe, center, delta)
    if richardson:
        half = _second_diffs(probe, center, delta / 2.0)
        diffs = tuple((4.0 * h - f) / 3.0 for h, f in zip(half, diffs))
    return _close_hessian(*diffs)


def _require_fc_cyclic(L: int, mu: float, gamma: float) -> np.ndarray:
    """Gamma-slopes of the paired eigenvalues, with singularity guard."""
    M = (L - 1) // 2
    c = _fc_gamma_slope(L)[:M]  # pairs j = 2 .. M+1
    denom = (mu - 1.0) ** 2 + gamma ** 2 * c ** 2
    if np.any(denom == 0.0):
        raise SingularPointError(
            f"paired eigenvalue vanishes at (mu, gamma) = ({mu}, {gamma})")
    return c


def h_analytic_cyclic(L: int, mu: float, gamma: float) -> tuple[float, float]:
    """Closed-form h of the fully-connected cyclic graph and the sum S.

    Returns
    -------
    (h_crit, S) : tuple of floats
        h_crit = -(1/4) [(mu-1)^2 + gamma^2] S.
    """
    c = _require_fc_cyclic(L, mu, gamma)
    denom = (mu - 1.0) ** 2 + gamma ** 2 * c ** 2
    S = float(np.sum(c ** 2 / denom ** 2))
    h = -0.25 * ((mu - 1.0) ** 2 + gamma ** 2) * S
    return h, S


def analytic_hessian_cyclic(L: int, mu: float, gamma: float) -> HessianAtZero:
    """Closed-form Hessian components of the fully-connected cyclic graph.

    The Hessian is rank one: the zero eigenvector points radially away from
    (mu, gamma) = (1, 0) and the negative eigenvalue h lies along the
    azimuthal direction.
    """
    _, S = h_analytic_cyclic(L, mu, gamma)
    return _close_hessian(-0.25 * gamma ** 2 * S,
                          -0.25 * (mu - 1.0) ** 2 * S,
                          0.25 * (mu - 1.0) * gamma * S)


def h_asymptotic(L: int, mu: float, gamma: float) -> float:
    """Thermodynamic-limit forms of h for the fully-connected cyclic graph.

    Three regimes: generic points scale as -L/16 times a rational function
    of (|mu-1|, |gamma|); on the critical lines mu = 1 and gamma = 0 the
    scaling steepens to -(1/24)(L/gamma)^2 and -(1/8)(L/(mu-1))^2.
    """
    if mu == 1.0 and gamma == 0.0:
        raise SingularPointError("asymptotic forms do not apply at (1, 0)")
    if mu == 1.0:
        return -(L / gamma) ** 2 / 24.0
    if gamma == 0.0:
        return -(L / (mu - 1.0)) ** 2 / 8.0
    am, ag = abs(mu - 1.0), abs(gamma)
    return -(L / 16.0) * ((mu - 1.0) ** 2 + gamma ** 2) / (am * ag * (am + ag) ** 2)


@dataclass(frozen=True)
class SweepSpec:
    """One-dimensional sweep: vary ``axis`` from start to stop on ``count``
    grid points while the other parameter stays at ``fixed``."""

    axis: str
    start: float
    stop: float
    count: int
    fixed: float

    def __post_init__(self):
        if self.axis not in ("mu", "gamma"):
            raise ParameterError(f"unknown sweep axis {self.axis!r}")
        if self.count < 2:
            raise ParameterError("a sweep needs at least two grid points")

    def point(self, x: float) -> tuple[float, float]:
        return (x, self.fixed) if self.axis == "mu" else (self.fixed, x)

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class BoundaryPoint:
    """Location of a first-order transition with the parity on each side."""

    mu: float
    gamma: float
    swept_value: float
    parity_below: int
    parity_above: int


def _resolve_range(L: int, boundary: Boundary, r) -> int:
    return full_range(L, boundary) if r == "full" else int(r)


def _det_sign_of(L: int, boundary: Boundary, r: int, sign: Sign,
                 mu: float, gamma: float) -> int:
    params = ModelParams(L=L, r=r, mu=mu, gamma=gamma,
                         boundary=boundary, sign=sign)
    if boundary is Boundary.CYCLIC:
        return spectral_list(params).det_sign()
    return det_sign(build(params).Z)


def first_order_boundary(L: int, boundary: Boundary, sweep: SweepSpec,
                         r="full", sign: Sign = Sign.S4,
                         tol: float = 1e-10) -> list[BoundaryPoint]:
    """Locate det Z = 0 crossings along a one-dimensional sweep.

    Grid points bracketing a sign change are refined by bisection on the
    sign of det Z (magnitudes are never compared: they vary over hundreds
    of orders of magnitude with L).  An empty list means no crossing.
    """
    rr = _resolve_range(L, boundary, r)

    def s(x: float) -> int:
        mu, gamma = sweep.point(x)
        return _det_sign_of(L, boundary, rr, sign, mu, gamma)

    grid = sweep.grid()
    signs = [s(x) for x in grid]
    out = []
    for i in range(len(grid) - 1):
        a, b, sa, sb = grid[i], grid[i + 1], signs[i], signs[i + 1]
        if sa == 0:
            # grid point sits exactly on the boundary
            mu, gamma = sweep.point(a)
            out.append(BoundaryPoint(float(mu), float(gamma), float(a),
                                     s(a - tol) if i else 0, int(sb)))
            continue
        if sa * sb >= 0:
            continue
        while b - a > tol:
            mid = 0.5 * (a + b)
            sm = s(mid)
            if sm == 0:
                a = b = mid
                break
            if sm == sa:
                a = mid
            else:
                b = mid
        x = 0.5 * (a + b)
        mu, gamma = sweep.point(x)
        out.append(BoundaryPoint(float(mu), float(gamma), float(x),
                                 int(sa), int(sb)))
    return out


def _golden_min(f, a: float, b: float, xtol: float) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b]; ties resolve to the left."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = f(c), f(d)
    while b - a > xtol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


@dataclass(frozen=True)
class ScalingSeries:
    """Peak positions/depths of h over a family of sizes, plus the same
    curves in collapsed units ((mu-1) L, h / L^2)."""

    sizes: np.ndarray
    peak_positions: np.ndarray
    peak_depths: np.ndarray
    collapsed: list[tuple[np.ndarray, np.ndarray]]
    crossings: list[list[float]]


def peak_scan(L_list, gamma: float, mu_window: tuple[float, float],
              boundary: Boundary = Boundary.CYCLIC, r="full",
              sign: Sign = Sign.S4, grid_points: int = 201,
              xtol: float = 1e-8, fd_step: float | None = None,
              richardson: bool = False, collapse_halfwidth: float = 20.0,
              collapse_points: int = 81) -> ScalingSeries:
    """Track the negative peak of h(mu) at fixed gamma across system sizes.

    For each L the window is bracketed on a grid and the minimum refined by
    golden section.  First-order crossings found inside the window are
    reported in ``crossings`` (per L) rather than silently skipped.  Set
    ``collapse_points=0`` to skip the collapsed curves (they cost one h
    evaluation per point, which matters on the dense path).
    """
    lo, hi = mu_window
    if not lo < hi:
        raise ParameterError("empty mu window")
    sizes, positions, depths, collapsed, crossings = [], [], [], [], []
    for L in L_list:
        rr = _resolve_range(L, boundary, r)

        def h_at(mu: float) -> float:
            params = ModelParams(L=L, r=rr, mu=mu, gamma=gamma,
                                 boundary=boundary, sign=sign)
            if boundary is Boundary.CYCLIC and params.fully_connected:
                return h_analytic_cyclic(L, mu, gamma)[0]
            return hessian_fd(params, delta=fd_step,
                              richardson=richardson).h_crit

        sweep = SweepSpec(axis="mu", start=lo, stop=hi,
                          count=max(grid_points, 3), fixed=gamma)
        found = first_order_boundary(L, boundary, sweep, r=rr, sign=sign,
                                     tol=1e-8)
        crossings.append([p.swept_value for p in found])

        grid = np.linspace(lo, hi, max(grid_points, 3))
        hvals = np.array([h_at(x) for x in grid])
        i = int(np.argmin(hvals))
        if i == 0 or i == len(grid) - 1:
            raise WindowError(
                f"no interior minimum of h in mu window {mu_window} at L={L}")
        mu_min, h_min = _golden_min(h_at, grid[i - 1], grid[i + 1], xtol)
        sizes.append(L)
        positions.append(mu_min)
        depths.append(h_min)
        if collapse_points > 0:
            x = np.linspace(-collapse_halfwidth, collapse_halfwidth,
                            collapse_points)
            y = np.array([h_at(1.0 + xi / L) for xi in x]) / L ** 2
            collapsed.append((x, y))
    return ScalingSeries(sizes=np.array(sizes),
                         peak_positions=np.array(positions),
                         peak_depths=np.array(depths),
                         collapsed=collapsed, crossings=crossings)


@dataclass(frozen=True)
class EnergyDerivatives:
    """Central-difference second derivatives of the energy density E0/L."""

    d2_mumu: float
    d2_gamgam: float
    d2_mugam: float


def energy_derivatives(L: int, mu: float, gamma: float,
                       step: float | None = None,
                       boundary: Boundary = Boundary.CYCLIC, r="full",
                       sign: Sign = Sign.S4) -> EnergyDerivatives:
    """Second derivatives of E0/L in (mu, gamma) by central differences."""
    if step is None:
        step = 10.0 * default_fd_step(mu, gamma)
    rr = _resolve_range(L, boundary, r)

    def params_at(dm: float, dg: float) -> ModelParams:
        return ModelParams(L=L, r=rr, mu=mu + dm, gamma=gamma + dg,
                           boundary=boundary, sign=sign)

    def e(dm: float, dg: float) -> float:
        p = params_at(dm, dg)
        if boundary is Boundary.CYCLIC:
            return cyclic_ground_energy(p) / L
        m = build(p)
        return ground_energy_and_gap(m, canonical_decompose(m))[0] / L

    signs = {
        _det_sign_of(L, boundary, rr, sign, mu + sx * step, gamma + sy * step)
        for sx, sy in _STENCIL + ((0, 0),)
    }
    if len(signs) > 1:
        raise StencilCrossingError(
            "energy stencil straddles a first-order boundary")
    e0 = e(0.0, 0.0)
    d2_mm = (e(step, 0) + e(-step, 0) - 2.0 * e0) / step ** 2
    d2_gg = (e(0, step) + e(0, -step) - 2.0 * e0) / step ** 2
    d2_mg = (e(step, step) + e(-step, -step)
             - e(step, -step) - e(-step, step)) / (4.0 * step ** 2)
    return EnergyDerivatives(d2_mumu=d2_mm, d2_gamgam=d2_gg, d2_mugam=d2_mg)


@dataclass(frozen=True)
class TPrimeZero:
    """Closed-form derivative of the polar factor at gamma = 0 for the
    free-ends fully-connected graph at mu > 1, with the trace of its square
    and the resulting h on the gamma = 0 line."""

    matrix: np.ndarray
    trace_sq: float
    h_gamma0: float


def t_prime_zero(L: int, mu: float) -> TPrimeZero:
    """Evaluate T'(0) elementwise and Tr[T'(0)]^2 in closed form.

    T'_jk(0) = [(k-j)/(L/2 + mu - 1) - sign(k-j)]/(mu - 1), and the trace of
    the square collapses to a rational function of L and mu; h on the
    gamma = 0 line is (1/8) Tr[T'(0)]^2.
    """
    if mu <= 1.0:
        raise ParameterError("closed form requires mu > 1")
    diff = -np.subtract.outer(np.arange(L), np.arange(L))  # k - j at [j, k]
    matrix = (diff / (L / 2.0 + mu - 1.0) - np.sign(diff)) / (mu - 1.0)
    trace_sq = ((-1.0 / (mu - 1.0) ** 2)
                * (L * (L - 1.0) / (3.0 * (L + 2.0 * (mu - 1.0)) ** 2))
                * (L ** 2 + 2.0 * L * (2.0 * mu - 3.0)
                   + 4.0 * (mu - 1.0) * (3.0 * mu - 5.0)))
    return TPrimeZero(matrix=matrix, trace_sq=float(trace_sq),
                      h_gamma0=float(trace_sq / 8.0))
