"""Parameter-sweep engine with CSV / JSON-lines / gnuplot export.

A scan walks a rectangular (mu, gamma) grid for one or more system sizes and
evaluates a requested subset of quantities at every point, taking the O(L)
circulant path for cyclic models and dense factorizations otherwise.
Per-point failures (level crossings under a stencil, degenerate endpoints)
are recorded in an explicit status column; a grid never aborts half way.

Rows are produced in deterministic order: L outermost, then gamma, with mu
varying fastest.  Worker threads only change who computes a row, never the
output, so exports are byte-identical for any thread count.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import ent
from .errors import (DegenerateEndpointError, DegeneratePointError,
                     FermifidError, ParameterError, StencilCrossingError)
from .gsfid import fidelity, fidelity_circulant
from .model import Boundary, ModelParams, Sign, build, full_range
from .crit import hessian_fd
from .solver import (canonical_decompose, det_sign, ground_energy_and_gap,
                     polar_T, spectral_list)

QUANTITIES = ("F_min", "h_crit", "log10_abs_h", "detZ", "gap", "E0",
              "n", "Si", "parity")


@dataclass(frozen=True)
class GridAxis:
    """Inclusive linear axis; count = 1 pins the axis to ``start``."""

    start: float
    stop: float
    count: int

    def __post_init__(self):
        if self.count < 1:
            raise ParameterError("axis needs at least one point")
        if self.count > 1 and not self.start < self.stop:
            raise ParameterError("swept axis needs start < stop")

    def values(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.start])
        return np.linspace(self.start, self.stop, self.count)


@dataclass(frozen=True)
class ScanSpec:
    """Everything needed to reproduce a scan byte for byte."""

    L: tuple[int, ...]
    mu: GridAxis
    gamma: GridAxis
    boundary: Boundary = Boundary.CYCLIC
    r: int | str = "full"
    sign: Sign = Sign.S4
    quantities: tuple[str, ...] = ("F_min", "h_crit")
    dmu: float = 0.1
    dgamma: float = 0.1
    fd_step: float | None = None
    seed: int = 0
    threads: int = 1
    force_dense: bool = False  # cross-check knob: ignore the circulant path

    def __post_init__(self):
        unknown = set(self.quantities) - set(QUANTITIES)
        if unknown:
            raise ParameterError(f"unknown quantities {sorted(unknown)}")
        if "F_min" in self.quantities and (self.dmu <= 0 or self.dgamma <= 0):
            raise ParameterError("F_min needs positive dmu and dgamma")

    def resolve_r(self, L: int) -> int:
        return full_range(L, self.boundary) if self.r == "full" else int(self.r)


@dataclass(frozen=True)
class ScanRow:
    L: int
    mu: float
    gamma: float
    values: dict[str, float]
    status: str


@dataclass(frozen=True)
class ScanTable:
    columns: tuple[str, ...]
    rows: list[ScanRow]
    metadata: dict = field(default_factory=dict)


class _PointEvaluator:
    """Evaluates all requested quantities at one grid point, caching the
    decomposition shared between them."""

    def __init__(self, spec: ScanSpec, params: ModelParams):
        self.spec = spec
        self.params = params
        self.fast = (params.boundary is Boundary.CYCLIC
                     and not spec.force_dense)
        self._spectral = None
        self._dense = None
        self._h = None

    @property
    def spectral(self):
        if self._spectral is None:
            self._spectral = spectral_list(self.params)
        return self._spectral

    @property
    def dense(self):
        if self._dense is None:
            m = build(self.params)
            spec = canonical_decompose(m)
            self._dense = (m, spec, polar_T(spec, m))
        return self._dense

    def _fid_to(self, displaced: ModelParams) -> float:
        if self.fast:
            return fidelity_circulant(self.spectral,
                                      spectral_list(displaced)).F
        m2 = build(displaced)
        p2 = polar_T(canonical_decompose(m2), m2)
        return fidelity(self.dense[2], p2).F

    def f_min(self) -> float:
        f_mu = self._fid_to(self.params.displaced(dmu=self.spec.dmu))
        f_ga = self._fid_to(self.params.displaced(dgamma=self.spec.dgamma))
        return min(f_mu, f_ga)

    def h_crit(self) -> float:
        if self._h is None:
            self._h = hessian_fd(self.params, delta=self.spec.fd_step,
                                 force_dense=not self.fast).h_crit
        return self._h

    def det_z(self) -> float:
        if self.fast:
            z = self.spectral.zeta
            sign = self.spectral.det_sign()
            with np.errstate(over="ignore", divide="ignore"):
                logabs = float(np.sum(np.log(np.abs(z))))
                return sign * float(np.exp(logabs))
        sgn, logabs = np.linalg.slogdet(self.dense[0].Z)
        with np.errstate(over="ignore"):
            return float(sgn * np.exp(logabs))

    def gap(self) -> float:
        if self.fast:
            return float(np.min(self.spectral.moduli))
        return self.dense[1].gap

    def e0(self) -> float:
        if self.fast:
            z = self.spectral.zeta
            return float(np.sum(z.real - np.abs(z)) / 2.0)
        m, spec, _ = self.dense
        return ground_energy_and_gap(m, spec)[0]

    def parity(self) -> float:
        if self.fast:
            return float(self.spectral.det_sign())
        return float(self.dense[2].parity)

    def mean_density(self) -> float:
        # mean <n_k> = (1 - Tr T / L)/2 for any model; per-site for cyclic
        if self.fast:
            if self.params.fully_connected:
                return ent.single_site(self.spectral).n
            s = self.spectral
            if np.any(s.moduli <= s.singular_threshold):
                raise DegeneratePointError("density undefined at crossing")
            tau = s.zeta / s.moduli
            return float((1.0 - np.sum(tau.real) / self.params.L) / 2.0)
        polar = self.dense[2]
        if not polar.well_defined:
            raise DegeneratePointError("density undefined at crossing")
        return float((1.0 - np.trace(polar.T) / self.params.L) / 2.0)

    def evaluate(self) -> ScanRow:
        values: dict[str, float] = {}
        flags: list[str] = []
        for q in self.spec.quantities:
            try:
                values[q] = self._one(q)
            except (DegenerateEndpointError, DegeneratePointError):
                values[q] = np.nan
                _append_unique(flags, "degenerate")
            except StencilCrossingError:
                values[q] = np.nan
                _append_unique(flags, "stencil_crossing")
            except FermifidError as exc:
                values[q] = np.nan
                _append_unique(flags, type(exc).__name__)
        return ScanRow(L=self.params.L, mu=self.params.mu,
                       gamma=self.params.gamma, values=values,
                       status="+".join(flags) if flags else "ok")

    def _one(self, q: str) -> float:
        if q == "F_min":
            return self.f_min()
        if q == "h_crit":
            return self.h_crit()
        if q == "log10_abs_h":
            h = self.h_crit()
            return float(np.log10(abs(h))) if h != 0.0 else -np.inf
        if q == "detZ":
            return self.det_z()
        if q == "gap":
            return self.gap()
        if q == "E0":
            return self.e0()
        if q == "n":
            return self.mean_density()
        if q == "Si":
            return ent.binary_entropy(self.mean_density())
        if q == "parity":
            return self.parity()
        raise ParameterError(f"unknown quantity {q!r}")


def _append_unique(flags: list[str], flag: str):
    if flag not in flags:
        flags.append(flag)


def run_scan(spec: ScanSpec) -> ScanTable:
    """Evaluate the requested quantities on the full grid.

    Grid points are independent work items; results are merged back in grid
    order, so the output is identical for any ``spec.threads``.
    """
    points = [
        ModelParams(L=L, r=spec.resolve_r(L), mu=float(m), gamma=float(g),
                    boundary=spec.boundary, sign=spec.sign)
        for L in spec.L
        for g in spec.gamma.values()
        for m in spec.mu.values()
    ]

    def work(params: ModelParams) -> ScanRow:
        return _PointEvaluator(spec, params).evaluate()

    if spec.threads > 1:
        with ThreadPoolExecutor(max_workers=spec.threads) as pool:
            rows = list(pool.map(work, points))
    else:
        rows = [work(p) for p in points]
    metadata = {
        "L": list(spec.L),
        "mu": [spec.mu.start, spec.mu.stop, spec.mu.count],
        "gamma": [spec.gamma.start, spec.gamma.stop, spec.gamma.count],
        "boundary": spec.boundary.value,
        "r": spec.r,
        "sign": spec.sign.value,
        "quantities": list(spec.quantities),
        "dmu": spec.dmu,
        "dgamma": spec.dgamma,
        "seed": spec.seed,
    }
    return ScanTable(columns=spec.quantities, rows=rows, metadata=metadata)


def _format_value(x: float) -> str:
    return repr(float(x))  # shortest round-trip decimal


def _csv_lines(table: ScanTable):
    yield "L,mu,gamma," + ",".join(table.columns) + ",status"
    for row in table.rows:
        cells = [str(row.L), _format_value(row.mu), _format_value(row.gamma)]
        cells += [_format_value(row.values[q]) for q in table.columns]
        cells.append(row.status)
        yield ",".join(cells)


def _jsonl_lines(table: ScanTable):
    def clean(x: float):
        return None if not np.isfinite(x) else float(x)

    for row in table.rows:
        obj = {"L": row.L, "mu": row.mu, "gamma": row.gamma}
        obj.update({q: clean(row.values[q]) for q in table.columns})
        obj["status"] = row.status
        yield json.dumps(obj)


def _gnuplot_lines(table: ScanTable):
    yield "# L mu gamma " + " ".join(table.columns) + " status"
    last_gamma = None
    for row in table.rows:
        if last_gamma is not None and row.gamma != last_gamma:
            yield ""  # block break per constant-gamma slice
        last_gamma = row.gamma
        cells = [str(row.L), _format_value(row.mu), _format_value(row.gamma)]
        cells += [_format_value(row.values[q]) for q in table.columns]
        cells.append(row.status)
        yield " ".join(cells)


_WRITERS = {"csv": _csv_lines, "jsonl": _jsonl_lines, "gnuplot": _gnuplot_lines}


def render(table: ScanTable, fmt: str) -> str:
    """Render a table to one of the supported text formats."""
    if fmt not in _WRITERS:
        raise ParameterError(f"unknown format {fmt!r}")
    return "\n".join(_WRITERS[fmt](table)) + "\n"


def emit(table: ScanTable, fmt: str, path: str) -> str:
    """Write a table to ``path``; returns the path.

    CSV uses the exact header ``L,mu,gamma,<quantity...>,status`` with
    shortest round-trip floats; JSON lines carry one object per row with the
    same keys (non-finite values become null); the gnuplot format separates
    constant-gamma slices by blank lines.
    """
    text = render(table, fmt)
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def write_metadata(table: ScanTable, path: str) -> str:
    """Sidecar JSON with the grid resolution and spec echo for presets."""
    meta_path = path + ".meta.json"
    with open(meta_path, "w") as fh:
        json.dump(table.metadata, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return meta_path


def preset_fidelity_map(L: int = 1001, resolution: int = 201,
                        threads: int = 1) -> ScanSpec:
    """Full-plane F_min map of the fully-connected cyclic graph
    (mu in [-1, 3], gamma in [-2, 2], displacement 0.1 on both axes)."""
    return ScanSpec(L=(L,), mu=GridAxis(-1.0, 3.0, resolution),
                    gamma=GridAxis(-2.0, 2.0, resolution),
                    quantities=("F_min",), dmu=0.1, dgamma=0.1,
                    threads=threads)


def preset_criticality_map(L: int = 1001, resolution: int = 201,
                           threads: int = 1) -> ScanSpec:
    """Full-plane log10|h| map of the fully-connected cyclic graph."""
    return ScanSpec(L=(L,), mu=GridAxis(-1.0, 3.0, resolution),
                    gamma=GridAxis(-2.0, 2.0, resolution),
                    quantities=("log10_abs_h",), threads=threads)


def preset_peak_scaling() -> dict:
    """Sizes and window of the finite-size scaling study at gamma = 1.5."""
    return {"L_list": list(range(101, 1002, 100)), "gamma": 1.5,
            "mu_window": (0.6, 1.4)}
