"""Parameter sweeps behind the command-line tool, with stable CSV/JSON output."""

from __future__ import annotations

import io
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from ._validation import ConfigurationError, DomainError
from .core import DEFAULT_CONSTANTS, ExperimentConfig, joint_state_params, linear_entropy, phase_difference
from .montecarlo import MonteCarloConfig, mc_correlator
from .noise import critical_noise, gamma_from_vcrit
from .stokes import (
    CORRELATOR_KEYS,
    LOConfig,
    correlators_closed_form,
    correlators_exact,
    measured_witness_closed,
    optimal_lo_phases,
)
from .witness import alpha_prime, exact_witness_expectation

__all__ = [
    "Axis",
    "SweepSpec",
    "SweepResult",
    "QUANTITIES",
    "format_value",
    "run_gamma_table",
    "run_gamma_sweep",
    "run_witness_curve",
    "run_noise_curve",
    "run_mc_check",
    "run_sweep",
    "TABLE_MASSES_KG",
    "TABLE_SEPARATIONS_UM",
]

QUANTITIES = ("gamma_table", "gamma_vs_separation", "witness_vs_gamma", "vcrit_vs_gamma", "monte_carlo_check")

TABLE_MASSES_KG = (0.1, 1.0, 5.0, 10.0)
TABLE_SEPARATIONS_UM = (1.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0)

MC_Z_LIMIT = 4.0


def format_value(x) -> str:
    """Six significant digits; scientific notation below 1e-3 in magnitude."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, str):
        return x
    x = float(x)
    if math.isnan(x) or math.isinf(x):
        return str(x)
    if x == 0.0:
        x = 0.0  # drop the sign of -0.0
    sci = f"{x:.5e}"
    if x != 0.0 and abs(x) < 1e-3:
        return sci
    # round to six significant digits first, then print positionally
    exponent = int(sci.split("e")[1])
    return f"{float(sci):.{max(5 - exponent, 0)}f}"


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) == 0:
            raise ConfigurationError(f"axis {self.name!r} has no points")

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, points: int) -> "Axis":
        return cls(name, tuple(float(x) for x in np.linspace(lo, hi, int(points))))

    @classmethod
    def parse(cls, name: str, text: str) -> "Axis":
        """Parse ``"a,b,c"`` (explicit list) or ``"min:max:points"`` (inclusive range)."""
        text = str(text).strip()
        try:
            if ":" in text:
                lo, hi, points = text.split(":")
                if int(points) < 1:
                    raise ValueError
                return cls.linspace(name, float(lo), float(hi), int(points))
            return cls(name, tuple(float(tok) for tok in text.split(",") if tok.strip()))
        except ValueError:
            raise ConfigurationError(f"cannot parse grid for {name!r}: {text!r}") from None


@dataclass
class SweepSpec:
    quantity: str
    grid: tuple[Axis, ...] = ()
    base_config: ExperimentConfig | None = None
    output_path: str | None = None
    format: str = "csv"
    seed: int = 0
    threads: int = 1
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ConfigurationError(f"unknown sweep quantity {self.quantity!r}")
        if self.format not in ("csv", "json"):
            raise ConfigurationError(f"output format must be csv or json, got {self.format!r}")

    def axis(self, name: str, default: Sequence[float]) -> tuple[float, ...]:
        for ax in self.grid:
            if ax.name == name:
                return ax.values
        return tuple(default)


@dataclass
class SweepResult:
    columns: list[str]
    rows: list[dict]
    config: dict = field(default_factory=dict)
    summary: dict = field(default_factory=dict)

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(format_value(row[c]) for c in self.columns) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        def clean(v):
            if isinstance(v, (np.floating, np.integer, np.bool_)):
                v = v.item()
            if isinstance(v, float) and v == 0.0:
                return 0.0  # no -0.0 in the output
            return v

        doc = {
            "config": {k: clean(v) for k, v in self.config.items()},
            "rows": [{c: clean(row[c]) for c in self.columns} for row in self.rows],
            "summary": {k: clean(v) for k, v in self.summary.items()},
        }
        return json.dumps(doc, indent=2, sort_keys=False) + "\n"

    def to_gnuplot(self, block_by: str) -> str:
        """Whitespace-separated data, one blank-line-separated block per value of ``block_by``."""
        buf = io.StringIO()
        buf.write("# " + " ".join(self.columns) + "\n")
        previous = None
        for row in self.rows:
            if previous is not None and row[block_by] != previous:
                buf.write("\n\n")
            previous = row[block_by]
            buf.write(" ".join(format_value(row[c]) for c in self.columns) + "\n")
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_csv()

    def write(self, path: str | Path, fmt: str = "csv") -> None:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(self.render(fmt))


def _evaluate(fn: Callable, points: Sequence, threads: int) -> list:
    # results come back in grid order whatever the scheduling
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, points))
    return [fn(p) for p in points]


def _base(spec: SweepSpec) -> ExperimentConfig:
    if spec.base_config is not None:
        return spec.base_config
    return ExperimentConfig.from_lab_units(mass_kg=10.0, sep_um=100.0)


def _config_dict(cfg: ExperimentConfig) -> dict:
    return {
        "alpha": cfg.alpha_mag,
        "tau_s": cfg.tau,
        "r0_m": cfg.r0,
        "lambda_um": cfg.wavelength * 1e6,
    }


def run_gamma_table(spec: SweepSpec, default_seps: Sequence[float] = TABLE_SEPARATIONS_UM) -> SweepResult:
    """Overlap magnitude on a mass x separation grid (defaults: the four reference masses x 1..100 um)."""
    base = _base(spec)
    masses = spec.axis("mass_kg", TABLE_MASSES_KG)
    seps = spec.axis("sep_um", default_seps)
    points = [(m, s) for m in masses for s in seps]

    def cell(point):
        m, s = point
        cfg = ExperimentConfig(
            mass=m, tau=base.tau, r0=base.r0, wavelength=base.wavelength, alpha_mag=base.alpha_mag, x_r=s * 1e-6
        )
        sp = joint_state_params(cfg, DEFAULT_CONSTANTS)
        return {
            "mass_kg": m,
            "sep_um": s,
            "delta_phi": phase_difference(cfg, DEFAULT_CONSTANTS),
            "gamma_mag": sp.gamma_mag,
            "linear_entropy": linear_entropy(sp.gamma),
        }

    rows = _evaluate(cell, points, spec.threads)
    return SweepResult(
        ["mass_kg", "sep_um", "delta_phi", "gamma_mag", "linear_entropy"],
        rows,
        config=_config_dict(base),
        summary={"cells": len(rows), "min_gamma_mag": min(r["gamma_mag"] for r in rows)},
    )


def run_gamma_sweep(spec: SweepSpec) -> SweepResult:
    """Dense separation sweep for the overlap-vs-separation curves."""
    dense = tuple(float(x) for x in np.linspace(1.0, 100.0, 100))
    return run_gamma_table(spec, default_seps=dense)


def run_witness_curve(spec: SweepSpec, tol: float = 1e-6) -> SweepResult:
    """Measured (at sin phi = 1) and exact witness against ``|gamma|``, with the curve minimum."""
    grid = spec.axis("gamma_mag", tuple(np.round(np.linspace(0.70, 1.00, 31), 10)))
    for g in grid:
        if not 0 < g <= 1:
            raise DomainError(f"|gamma| grid values must lie in (0, 1], got {g!r}")

    def point(g):
        return {
            "gamma_mag": g,
            "alpha_prime": alpha_prime(g),
            "witness_measured": measured_witness_closed(g, 1.0),
            "witness_exact": exact_witness_expectation(complex(g)),
        }

    rows = _evaluate(point, grid, spec.threads)
    res = minimize_scalar(
        lambda g: measured_witness_closed(g, 1.0), bounds=(0.5, 1.0), method="bounded", options={"xatol": tol}
    )
    crossing = brentq(lambda g: measured_witness_closed(g, 1.0), 0.5, 0.9, xtol=1e-12)
    return SweepResult(
        ["gamma_mag", "alpha_prime", "witness_measured", "witness_exact"],
        rows,
        config={"sin_phi": 1.0},
        summary={"min_gamma_mag": float(res.x), "min_witness": float(res.fun), "zero_crossing": crossing},
    )


def run_noise_curve(spec: SweepSpec) -> SweepResult:
    """``|gamma|`` that sits exactly at the entanglement threshold for each noise level ``v``."""
    grid = spec.axis("v", tuple(np.linspace(1 / 3, 1.0, 41)))

    def point(v):
        g = gamma_from_vcrit(v)
        return {"v": v, "gamma_mag": g, "roundtrip_error": critical_noise(g) - v}

    rows = _evaluate(point, grid, spec.threads)
    return SweepResult(
        ["v", "gamma_mag", "roundtrip_error"],
        rows,
        summary={"asymptote_v": 1 / 3, "max_roundtrip_error": max(abs(r["roundtrip_error"]) for r in rows)},
    )


def run_mc_check(spec: SweepSpec) -> SweepResult:
    """Monte Carlo estimates of every witness correlator against the closed forms.

    Options: ``alpha`` (3), ``beta`` (3), ``delta_phi`` (0.2), ``n_trials``
    (1e5), ``cutoff`` (automatic).  PASS iff every ``|z| < 4``.
    """
    opts = spec.options
    alpha = float(opts.get("alpha", 3.0))
    beta = float(opts.get("beta", 3.0))
    dphi = float(opts.get("delta_phi", 0.2))
    cutoff = opts.get("cutoff")
    cfg = MonteCarloConfig(
        complex(alpha),
        complex(alpha * math.cos(dphi), alpha * math.sin(dphi)),
        complex(beta),
        n_trials=int(opts.get("n_trials", 100_000)),
        seed=int(spec.seed),
        fock_cutoff=None if cutoff is None else int(cutoff),
    )
    sp = cfg.state_params()
    p1, p3 = optimal_lo_phases(sp)
    lo1, lo3 = LOConfig(beta, p1), LOConfig(beta, p3)
    closed = correlators_closed_form(sp, lo1, lo3)
    exact = correlators_exact(cfg.alpha_1, cfg.alpha_2, lo1, lo3)

    def point(key):
        axis, j = key
        lo = lo3 if j == 3 else lo1
        est = mc_correlator(cfg, axis, j, lo, workers=spec.threads)
        ref = closed.get(axis, j)
        diff = est.estimate - ref
        if est.std_error > 0:
            z = diff / est.std_error
        else:
            z = 0.0 if abs(diff) < 1e-12 else math.inf
        return {
            "correlator": f"sigma_{axis}*S{j}",
            "phi_beta": lo.phi_beta,
            "closed_form": ref,
            "exact": exact.get(axis, j),
            "mc_estimate": est.estimate,
            "std_error": est.std_error,
            "z_score": z,
        }

    rows = [point(k) for k in CORRELATOR_KEYS]
    max_z = max(abs(r["z_score"]) for r in rows)
    return SweepResult(
        ["correlator", "phi_beta", "closed_form", "exact", "mc_estimate", "std_error", "z_score"],
        rows,
        config={
            "alpha": alpha,
            "beta": beta,
            "delta_phi": dphi,
            "n_trials": cfg.n_trials,
            "seed": cfg.seed,
            "fock_cutoff": cfg.fock_cutoff,
            "gamma_mag": sp.gamma_mag,
        },
        summary={"max_abs_z": max_z, "z_limit": MC_Z_LIMIT, "passed": bool(max_z < MC_Z_LIMIT)},
    )


_RUNNERS = {
    "gamma_table": run_gamma_table,
    "gamma_vs_separation": run_gamma_sweep,
    "witness_vs_gamma": run_witness_curve,
    "vcrit_vs_gamma": run_noise_curve,
    "monte_carlo_check": run_mc_check,
}


def run_sweep(spec: SweepSpec) -> SweepResult:
    result = _RUNNERS[spec.quantity](spec)
    if spec.output_path:
        result.write(spec.output_path, spec.format)
    return result

