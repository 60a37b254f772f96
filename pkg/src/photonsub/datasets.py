"""Tabular datasets behind each figure, plus CSV/JSON writers.

Every builder returns a :class:`Dataset` whose rows come out in a fixed
parameter order, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import csv
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from photonsub import CONVENTIONS_VERSION
from photonsub.conditioning import IPSParams, click_probability, conditional_state
from photonsub.errors import ConvergenceError, InvalidParameterError, NoClickError
from photonsub.metrics import fidelity, nonclassical_depth, purity
from photonsub.oracle import OracleConfig, oracle_metrics
from photonsub.quasiprob import (
    PhaseSpaceGrid,
    SqueezedFockParams,
    wigner,
    wigner_grid,
    wigner_xy,
)

# Sweeps toward tau -> 1 stop here; tau = 1 itself never clicks.
TAU_MAX = 1.0 - 1e-6


@dataclass(frozen=True)
class SweepSpec:
    """Linearly spaced values of one parameter."""

    name: str
    start: float
    stop: float
    count: int
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.count < 2:
            raise InvalidParameterError(f"{self.name} sweep needs at least 2 points")
        if self.start == self.stop:
            raise InvalidParameterError(f"{self.name} sweep start and stop coincide")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


@dataclass
class Dataset:
    name: str
    parameters: dict
    columns: list[str]
    rows: list[tuple]

    def __post_init__(self):
        for row in self.rows:
            if len(row) != len(self.columns):
                raise ValueError(f"row width {len(row)} does not match schema {self.columns}")

    def column(self, name) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows])

    def envelope(self, command) -> dict:
        return {
            "dataset": self.name,
            "command": list(command),
            "parameters": self.parameters,
            "conventions_version": CONVENTIONS_VERSION,
            "columns": self.columns,
            "n_rows": len(self.rows),
            "csv": {"delimiter": ",", "decimal": ".", "float_format": "%.17g"},
        }

    def write(self, out_path, command=()) -> tuple[Path, Path]:
        """Write rows to ``out_path`` and the envelope to a ``.json`` sidecar."""
        out = Path(out_path)
        out.parent.mkdir(parents=True, exist_ok=True)
        with out.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(self.columns)
            for row in self.rows:
                writer.writerow([_fmt(v) for v in row])
        sidecar = out.with_suffix(".json") if out.suffix != ".json" else out.with_suffix(".meta.json")
        sidecar.write_text(json.dumps(self.envelope(command), indent=2, sort_keys=True) + "\n")
        return out, sidecar


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, (float, np.floating)):
        return "%.17g" % value
    return str(value)


def _label(prefix, name, value):
    return f"{prefix}_{name}={value:g}"


def wigner_grid_dataset(r=None, tau=None, eta=None, grid: PhaseSpaceGrid | None = None,
                        target_z: float | None = None) -> Dataset:
    """Wigner surface of the conditional state, or of S(z)|1> when ``target_z`` is set."""
    if target_z is not None:
        state = SqueezedFockParams(target_z)
        params = {"z": target_z}
    else:
        state = conditional_state(IPSParams(r, tau, eta))
        params = {"r": r, "tau": tau, "eta": eta}
    grid = grid or PhaseSpaceGrid.for_state(state)
    W = wigner_grid(state, grid)
    xs, ys = grid.x, grid.y
    rows = [(float(xs[i]), float(ys[j]), float(W[j, i]))
            for j in range(grid.ny) for i in range(grid.nx)]
    params["grid"] = {"x": [grid.x_min, grid.x_max, grid.nx], "y": [grid.y_min, grid.y_max, grid.ny]}
    return Dataset("wigner_grid", params, ["x", "y", "w"], rows)


def wigner_profiles_dataset(r, eta, taus, z=None, y=None) -> Dataset:
    """Cuts ``W(0, y)`` of the conditional state for several ``tau`` and of the target."""
    z = r if z is None else z
    y = np.linspace(-3.0, 3.0, 241) if y is None else np.asarray(y, dtype=float)
    cols = [wigner_xy(conditional_state(IPSParams(r, t, eta)), 0.0, y) for t in taus]
    target = wigner_xy(SqueezedFockParams(z), 0.0, y)
    columns = ["y"] + [_label("w_out", "tau", t) for t in taus] + [_label("w_sqfock", "z", z)]
    rows = [tuple(float(v) for v in (y[i], *(c[i] for c in cols), target[i])) for i in range(y.size)]
    params = {"r": r, "eta": eta, "taus": list(taus), "z": z, "y": [float(y[0]), float(y[-1]), int(y.size)]}
    return Dataset("wigner_profiles", params, columns, rows)


def origin_sweep_dataset(r, etas, taus) -> Dataset:
    """``W(0, 0)`` against ``tau``, one column per ``eta``."""
    taus = np.asarray(taus, dtype=float)
    cols = [[wigner(conditional_state(IPSParams(r, t, e)), 0.0) for t in taus] for e in etas]
    columns = ["tau"] + [_label("w00", "eta", e) for e in etas]
    rows = [tuple(float(v) for v in (taus[i], *(c[i] for c in cols))) for i in range(taus.size)]
    params = {"r": r, "etas": list(etas), "taus": [float(taus[0]), float(taus[-1]), int(taus.size)]}
    return Dataset("origin_sweep", params, columns, rows)


def fidelity_sweep_dataset(eta, rs, taus) -> Dataset:
    """Fidelity to S(r)|1> against ``tau``, one column per input squeezing ``r``."""
    taus = np.asarray(taus, dtype=float)
    cols = [[fidelity(IPSParams(r, t, eta), r).value for t in taus] for r in rs]
    columns = ["tau"] + [_label("F", "r", r) for r in rs]
    rows = [tuple(float(v) for v in (taus[i], *(c[i] for c in cols))) for i in range(taus.size)]
    params = {"eta": eta, "rs": list(rs), "taus": [float(taus[0]), float(taus[-1]), int(taus.size)]}
    return Dataset("fidelity_sweep", params, columns, rows)


def purity_surface_dataset(eta, rs, taus) -> Dataset:
    rs = np.asarray(rs, dtype=float)
    taus = np.asarray(taus, dtype=float)
    rows = [(float(r), float(t), purity(IPSParams(r, t, eta))) for r in rs for t in taus]
    params = {"eta": eta, "rs": [float(rs[0]), float(rs[-1]), int(rs.size)],
              "taus": [float(taus[0]), float(taus[-1]), int(taus.size)]}
    return Dataset("purity_surface", params, ["r", "tau", "purity"], rows)


def depth_surface_dataset(taus, etas) -> Dataset:
    taus = np.asarray(taus, dtype=float)
    etas = np.asarray(etas, dtype=float)
    rows = []
    for t in taus:
        for e in etas:
            rep = nonclassical_depth(float(t), float(e))
            rows.append((float(t), float(e), rep.s_bar, rep.depth))
    params = {"taus": [float(taus[0]), float(taus[-1]), int(taus.size)],
              "etas": [float(etas[0]), float(etas[-1]), int(etas.size)]}
    return Dataset("depth_surface", params, ["tau", "eta", "s_bar", "depth"], rows)


ORACLE_COLUMNS = [
    "r", "tau", "eta", "status", "cutoff",
    "p_on_closed", "p_on_oracle", "p_on_diff",
    "F_closed", "F_oracle", "F_diff",
    "purity_closed", "purity_oracle", "purity_diff",
]


def _compare_point(point, cfg_kwargs):
    r, tau, eta = point
    params = IPSParams(r, tau, eta)
    if not params.can_click:
        return (r, tau, eta, "no-click", None) + (None,) * 9
    cfg = OracleConfig.for_squeezing(r, **cfg_kwargs)
    try:
        o = oracle_metrics(params, cfg=cfg)
    except ConvergenceError:
        return (r, tau, eta, "no-convergence", None) + (None,) * 9
    p = click_probability(params)
    F = fidelity(params, r).value
    mu = purity(params)
    return (r, tau, eta, "ok", o.cutoff,
            p, o.p_on, abs(p - o.p_on),
            F, o.fidelity, abs(F - o.fidelity),
            mu, o.purity, abs(mu - o.purity))


def oracle_compare_dataset(rs, taus, etas, tol=1e-6, cfg_kwargs=None, jobs=1) -> tuple[Dataset, bool]:
    """Closed form against the Fock oracle at every grid point.

    Returns the dataset and ``True`` if every evaluated point is within ``tol``.
    """
    cfg_kwargs = dict(cfg_kwargs or {})
    points = [(float(r), float(t), float(e)) for r in rs for t in taus for e in etas]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_compare_point, points, [cfg_kwargs] * len(points)))
    else:
        rows = [_compare_point(p, cfg_kwargs) for p in points]
    ok = all(
        row[3] == "ok" and max(row[7], row[10], row[13]) <= tol
        for row in rows
        if row[3] != "no-click"
    )
    params = {"rs": list(rs), "taus": list(taus), "etas": list(etas), "tol": tol,
              "oracle": cfg_kwargs}
    return Dataset("oracle_compare", params, ORACLE_COLUMNS, rows), ok
