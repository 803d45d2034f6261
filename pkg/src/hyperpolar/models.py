"""Synthetic hyperanalytic models with analytic ground truth, and error metrics.

A model is ``s(t) = A(t) * exp(B(t) j)`` with ``A = |A| e^{i phi_A}`` and
``B = c + i d``.  The observable complex signal is the ``r + i*qi`` half of
``s``; everything else is returned as ground truth.

The built-in ``paper`` model is::

    A(t) = exp(-t) * exp(7 sin(2 pi t) i)
    B(t) = 40 pi t + i (20 pi t + 4 cos(2 pi t))
    f_B(t) = 20 + i (10 - 4 sin(2 pi t))          (Hz)

on ``t in [0, 0.4]``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError
from .quaternion import complex_to_quat, qexp, qmul
from .series import ComplexSeries, QuaternionSeries

PAPER_DURATION = 0.4
DEFAULT_FS = 10_000.0
MIN_OVERSAMPLING = 10.0


class UndersampledModelWarning(UserWarning):
    pass


class NonCanonicalModelWarning(UserWarning):
    """The model's polar form breaks the uniqueness constraints, so it cannot be recovered as given."""


@dataclass(frozen=True)
class Term:
    """A scalar time function with a closed-form derivative.

    ``kind`` is one of

    ``const``     ``value``
    ``exp``       ``amp * exp(-rate t)``
    ``am``        ``amp * (1 + depth cos(2 pi freq t + phase))``
    ``harmonic``  ``offset + 2 pi drift t + amp cos(2 pi freq t + phase)``
    """

    kind: str
    params: dict = field(default_factory=dict)

    def _p(self, name, default=0.0):
        return float(self.params.get(name, default))

    def evaluate(self, t) -> tuple[np.ndarray, np.ndarray]:
        t = np.asarray(t, dtype=float)
        if self.kind == "const":
            v = self._p("value")
            return np.full_like(t, v), np.zeros_like(t)
        if self.kind == "exp":
            amp, rate = self._p("amp", 1.0), self._p("rate")
            v = amp * np.exp(-rate * t)
            return v, -rate * v
        if self.kind == "am":
            amp, depth = self._p("amp", 1.0), self._p("depth")
            w, ph = 2 * np.pi * self._p("freq"), self._p("phase")
            return amp * (1 + depth * np.cos(w * t + ph)), -amp * depth * w * np.sin(w * t + ph)
        if self.kind == "harmonic":
            off, drift, amp = self._p("offset"), self._p("drift"), self._p("amp")
            w, ph = 2 * np.pi * self._p("freq"), self._p("phase")
            v = off + 2 * np.pi * drift * t + amp * np.cos(w * t + ph)
            dv = 2 * np.pi * drift - amp * w * np.sin(w * t + ph)
            return v, dv
        raise ConfigError(f"unknown term kind {self.kind!r}")


@dataclass(frozen=True)
class ModelSpec:
    """What to synthesize.

    ``kind="paper_model"`` ignores the four terms.  For ``"am_fm_custom"``
    the envelope is ``magnitude(t) * exp(i*envelope_phase(t))`` and the
    complex phase is ``c(t) + i*d(t)``.
    """

    kind: str = "paper_model"
    duration: float = PAPER_DURATION
    fs: float = DEFAULT_FS
    t0: float = 0.0
    magnitude: Term = Term("const", {"value": 1.0})
    envelope_phase: Term = Term("const", {"value": 0.0})
    c: Term = Term("const", {"value": 0.0})
    d: Term = Term("const", {"value": 0.0})

    @classmethod
    def paper(cls, fs=DEFAULT_FS, duration=PAPER_DURATION) -> "ModelSpec":
        return cls("paper_model", duration, fs)


@dataclass(frozen=True, eq=False)
class GroundTruth:
    s: QuaternionSeries
    A: np.ndarray
    B: np.ndarray
    f_B: np.ndarray
    phi_A: np.ndarray
    f_A: np.ndarray

    @property
    def t(self):
        return self.s.t

    @property
    def carrier(self) -> np.ndarray:
        """``(alpha, beta, gamma)`` of ``exp(B*j)``."""
        q = carrier_quaternions(self.B)
        return q[:, [0, 2, 3]]


def sample_count(duration: float, fs: float) -> int:
    # the small guard keeps e.g. 0.4 * 10000 from landing just below 4000
    return int(math.floor(duration * fs + 1e-9)) + 1


def carrier_quaternions(B) -> np.ndarray:
    """``exp(B*j)`` for complex ``B = c + i*d``: ``B*j = c*j + d*k``."""
    B = np.asarray(B, dtype=complex)
    pure = np.zeros(B.shape + (4,))
    pure[..., 2] = B.real
    pure[..., 3] = B.imag
    return qexp(pure)


def polar_to_quaternion(A, B) -> np.ndarray:
    return qmul(complex_to_quat(A), carrier_quaternions(B))


def _paper_terms(t):
    w = 2 * np.pi
    mag = np.exp(-t)
    dmag = -mag
    phi = 7 * np.sin(w * t)
    dphi = 7 * w * np.cos(w * t)
    c = 40 * np.pi * t
    dc = np.full_like(t, 40 * np.pi)
    d = 20 * np.pi * t + 4 * np.cos(w * t)
    dd = 20 * np.pi - 4 * w * np.sin(w * t)
    return mag, dmag, phi, dphi, c, dc, d, dd


def generate(spec: ModelSpec) -> tuple[ComplexSeries, GroundTruth]:
    """Sample ``spec`` and return the observable complex signal plus ground truth."""
    if not (spec.duration > 0 and math.isfinite(spec.duration)):
        raise ConfigError(f"model duration must be positive, got {spec.duration!r}")
    if not (spec.fs > 0 and math.isfinite(spec.fs)):
        raise ConfigError(f"sampling rate must be positive, got {spec.fs!r}")
    n = sample_count(spec.duration, spec.fs)
    dt = 1.0 / spec.fs
    t = spec.t0 + dt * np.arange(n)

    if spec.kind == "paper_model":
        mag, _, phi, dphi, c, dc, d, dd = _paper_terms(t)
    elif spec.kind == "am_fm_custom":
        mag, _ = spec.magnitude.evaluate(t)
        phi, dphi = spec.envelope_phase.evaluate(t)
        c, dc = spec.c.evaluate(t)
        d, dd = spec.d.evaluate(t)
    else:
        raise ConfigError(f"unknown model kind {spec.kind!r}")

    if np.any(mag <= 0):
        raise ConfigError("envelope magnitude must stay positive")
    bnorm = np.hypot(c, d)
    with np.errstate(invalid="ignore", divide="ignore"):
        dbnorm = np.where(bnorm > 0, (c * dc + d * dd) / np.where(bnorm > 0, bnorm, 1.0), 0.0)
    fmax = float(np.max(np.abs(np.concatenate([dphi, dc, dd, dbnorm])))) / (2 * np.pi)
    if spec.fs < MIN_OVERSAMPLING * fmax:
        warnings.warn(
            f"fs = {spec.fs:g} Hz is below {MIN_OVERSAMPLING:g}x the highest instantaneous "
            f"frequency ({fmax:.4g} Hz) of the model",
            UndersampledModelWarning,
            stacklevel=2,
        )

    problems = []
    if not -1e-12 <= phi[0] <= math.pi / 2 + 1e-12:
        problems.append(f"phi_A(0) = {phi[0]:.4g} outside [0, pi/2]")
    if not bnorm[0] < 2 * math.pi:
        problems.append(f"|B(0)| = {bnorm[0]:.4g} not below 2 pi")
    if np.any(c < 0) or np.any(d < 0) or np.any(dc < 0) or np.any(dd < 0):
        problems.append("c or d negative or decreasing")
    if problems:
        warnings.warn("non-canonical model: " + "; ".join(problems), NonCanonicalModelWarning, stacklevel=2)

    A = mag * np.exp(1j * phi)
    B = c + 1j * d
    s = QuaternionSeries(polar_to_quaternion(A, B), dt, spec.t0)
    z = s.complex_part()
    f_B = (dc + 1j * dd) / (2 * np.pi)
    truth = GroundTruth(s=s, A=A, B=B, f_B=f_B, phi_A=phi, f_A=dphi / (2 * np.pi))
    return z, truth


# --------------------------------------------------------------------------
# metrics


def interior_slice(n: int, edge_fraction: float) -> slice:
    """Samples kept after dropping ``floor(edge_fraction * n)`` at each end."""
    if not 0.0 <= edge_fraction < 0.5:
        raise ConfigError(f"edge fraction must be in [0, 0.5), got {edge_fraction!r}")
    k = int(math.floor(edge_fraction * n))
    return slice(k, n - k)


def _summary(x, inner):
    x = np.asarray(x, dtype=float)
    return {
        "max": float(np.max(x)),
        "median": float(np.median(x)),
        "interior_max": float(np.max(x[inner])),
        "interior_median": float(np.median(x[inner])),
    }


def error_metrics(polar, freq, truth: GroundTruth, edge_fraction=0.05) -> dict:
    """Pointwise errors against ground truth and their summaries.

    ``Df_Br``/``Df_Bi`` are ``|f_B - f~_B|`` per component; envelope errors are
    relative to ``|A|``; phase errors are absolute in radians.
    """
    n = truth.A.size
    inner = interior_slice(n, edge_fraction)
    df_br = np.abs(truth.f_B.real - freq.f_B.real)
    df_bi = np.abs(truth.f_B.imag - freq.f_B.imag)
    env_rel = np.abs(polar.envelope - truth.A) / np.abs(truth.A)
    phase_abs = np.abs(polar.phase - truth.B)
    folded_abs = np.abs(polar.phase_folded - truth.B)
    return {
        "series": {
            "Df_Br": df_br,
            "Df_Bi": df_bi,
            "envelope_rel": env_rel,
            "phase_abs": phase_abs,
            "phase_folded_abs": folded_abs,
        },
        "summary": {
            "Df_Br": _summary(df_br, inner),
            "Df_Bi": _summary(df_bi, inner),
            "envelope_rel": _summary(env_rel, inner),
            "phase_abs": _summary(phase_abs, inner),
            "phase_folded_abs": _summary(folded_abs, inner),
        },
        "edge_fraction": edge_fraction,
    }
