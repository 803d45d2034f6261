"""End-to-end driver: complex signal (or model) -> polar form -> report."""

from __future__ import annotations

import hashlib
import math
import time
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import ConfigError, InputError
from .models import GroundTruth, ModelSpec, error_metrics, generate
from .polar import DecomposeConfig, decompose
from .series import ComplexSeries
from .transform import hyperanalytic

# thresholds used by ``verify``; "exact" feeds the model's own quaternion series
THRESHOLDS = {
    "exact": {
        "envelope_abs_max": 1e-6,
        "Df_Br_interior_max": 1e-6,
        "Df_Bi_interior_max": 0.01,
    },
    "full": {
        "envelope_rel_interior_max": 0.01,
        "Df_Br_interior_median": 0.05,
        "Df_Bi_interior_max": 0.5,
    },
}


@dataclass(frozen=True)
class PipelineConfig:
    decompose: DecomposeConfig = field(default_factory=DecomposeConfig)
    edge_fraction: float = 0.05
    path: str = "full"

    def echo(self) -> dict:
        d = asdict(self.decompose)
        d["phase_init_range"] = tuple(d["phase_init_range"])
        if d["eps_mag"] is None:
            d["eps_mag"] = "auto"
        return {**d, "edge_fraction": self.edge_fraction, "path": self.path}


@dataclass
class RunReport:
    n_samples: int
    dt: float
    t0: float
    config: dict
    timings: dict
    checksums: dict
    cases: dict
    diagnostics: dict
    metrics: dict | None = None
    checks: dict | None = None

    def as_dict(self, include_timings=False) -> dict:
        out = {
            "n_samples": self.n_samples,
            "dt": self.dt,
            "t0": self.t0,
            "config": self.config,
            "diagnostics": self.diagnostics,
            "cases": self.cases,
            "checksums": self.checksums,
        }
        if self.metrics is not None:
            out["metrics"] = self.metrics
        if self.checks is not None:
            out["checks"] = self.checks
        if include_timings:
            out["timings"] = self.timings
        return out

    @property
    def passed(self) -> bool:
        return self.checks is None or all(v["pass"] for v in self.checks.values())


def checksum(*arrays) -> str:
    h = hashlib.sha256()
    for a in arrays:
        h.update(np.ascontiguousarray(a).tobytes())
    return h.hexdigest()


def evaluate_checks(metrics, path, polar=None, truth=None) -> dict:
    limits = THRESHOLDS[path]
    s = metrics["summary"]
    if path == "exact":
        values = {
            "envelope_abs_max": float(np.max(np.abs(polar.envelope - truth.A))),
            "Df_Br_interior_max": s["Df_Br"]["interior_max"],
            "Df_Bi_interior_max": s["Df_Bi"]["interior_max"],
        }
    else:
        values = {
            "envelope_rel_interior_max": s["envelope_rel"]["interior_max"],
            "Df_Br_interior_median": s["Df_Br"]["interior_median"],
            "Df_Bi_interior_max": s["Df_Bi"]["interior_max"],
        }
    return {k: {"value": values[k], "limit": limits[k], "pass": bool(values[k] < limits[k])} for k in limits}


def run_pipeline(source, config: PipelineConfig | None = None, truth: GroundTruth | None = None):
    """Run the full analysis.

    ``source`` is a :class:`ComplexSeries` or a :class:`ModelSpec`.  For a
    model, ``config.path`` picks what is decomposed: ``"full"`` builds the
    hyperanalytic signal from the complex samples, ``"exact"`` feeds the
    model's own quaternion series.  Returns ``(polar, freq, report)``; the
    report carries error metrics whenever ground truth is known.
    """
    if config is None:
        config = PipelineConfig()
    if config.path not in THRESHOLDS:
        raise ConfigError(f"unknown path {config.path!r}, expected 'full' or 'exact'")
    timings = {}
    clock = time.perf_counter()

    if isinstance(source, ModelSpec):
        z, truth = generate(source)
        timings["generate"] = time.perf_counter() - clock
        clock = time.perf_counter()
    elif isinstance(source, ComplexSeries):
        z = source
    else:
        raise InputError(f"run_pipeline expects a ComplexSeries or ModelSpec, got {type(source).__name__}")

    if config.path == "exact":
        if truth is None:
            raise ConfigError("the exact path needs ground truth (a model or a truth file)")
        s = truth.s
    else:
        s = hyperanalytic(z)
    timings["hyperanalytic"] = time.perf_counter() - clock
    clock = time.perf_counter()

    polar, freq = decompose(s, config.decompose)
    timings["decompose"] = time.perf_counter() - clock

    metrics = checks = None
    if truth is not None:
        if truth.A.size != polar.envelope.size:
            raise InputError(f"truth has {truth.A.size} samples, signal has {polar.envelope.size}")
        full = error_metrics(polar, freq, truth, config.edge_fraction)
        metrics = full["summary"]
        checks = evaluate_checks(full, config.path, polar, truth)

    diagnostics = {
        "phi_A0": float(np.angle(polar.envelope[0])),
        "B0_norm": float(abs(polar.phase[0])),
        "c_min": float(np.min(polar.c)),
        "d_min": float(np.min(polar.d)),
        "max_reconstruction_error": float(np.max(np.abs(polar.reconstruct().values - s.values))),
        "axis_clamp": polar.axis_clamp,
        "analytic_ratio": freq.analytic_ratio if freq.analytic_ratio is not None else "not computed",
        "f_A": "reported" if freq.f_A is not None else "not reported",
    }
    cases = {ch: " ".join(c.label for c in polar.cases(ch)) or "none" for ch in ("a", "b")}
    checksums = {
        "envelope": checksum(polar.envelope),
        "phase": checksum(polar.phase),
        "frequency": checksum(freq.f_B),
    }
    report = RunReport(
        n_samples=int(polar.envelope.size),
        dt=polar.dt,
        t0=polar.t0,
        config=config.echo(),
        timings=timings,
        checksums=checksums,
        cases=cases,
        diagnostics=diagnostics,
        metrics=metrics,
        checks=checks,
    )
    return polar, freq, report


def parse_config_file(path) -> dict:
    """``key = value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as f:
        for lineno, raw in enumerate(f, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise InputError(f"{path}: line {lineno}: expected key=value")
            key, value = (x.strip() for x in line.split("=", 1))
            out[key.replace("-", "_")] = value
    return out


def _as_bool(v):
    if isinstance(v, bool):
        return v
    s = str(v).strip().lower()
    if s in {"1", "true", "yes", "on"}:
        return True
    if s in {"0", "false", "no", "off"}:
        return False
    raise ConfigError(f"not a boolean: {v!r}")


def build_config(options: dict) -> PipelineConfig:
    """Assemble a :class:`PipelineConfig` from flat option names (CLI/config-file style)."""
    try:
        lo = float(options.get("phase_init_low", 0.0))
        hi = float(options.get("phase_init_high", math.pi / 2))
        eps = options.get("eps_mag")
        dec = DecomposeConfig(
            phase_init_range=(lo, hi),
            eta=float(options.get("eta", 0.5)),
            eps_mag=None if eps in (None, "auto") else float(eps),
            mask_degenerate=_as_bool(options.get("mask_degenerate", False)),
            b0_low=float(options.get("b0_low", 0.0)),
            unwrap=str(options.get("unwrap", "quadrant")),
            envelope_frequency=_as_bool(options.get("envelope_frequency", False)),
        )
        edge = float(options.get("edge_exclude", 0.05))
    except ValueError as exc:
        raise ConfigError(f"bad configuration value: {exc}") from None
    if not 0.0 <= edge < 0.5:
        raise ConfigError(f"edge_exclude must be in [0, 0.5), got {edge}")
    if dec.unwrap not in ("quadrant", "reflection"):
        raise ConfigError(f"unwrap must be 'quadrant' or 'reflection', got {dec.unwrap!r}")
    return PipelineConfig(dec, edge, str(options.get("path", "full")))
