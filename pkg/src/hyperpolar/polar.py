"""Unique polar form ``s = A * exp(B*j)`` of a quaternion series.

Pipeline (see :func:`decompose`)::

    axis_normalize -> recover_envelope -> extract_carrier
                   -> recover_phase -> instantaneous_frequency

The complex part ``q_r + i*q_i`` of every sample equals ``A*alpha`` where
``alpha = cos|B|`` is the scalar part of the carrier, so its axis only fixes
``A/|A|`` up to ``sgn(alpha)``.  The moduli ``|a|`` and ``|b|`` are free of
that ambiguity; their signs are recovered half-period by half-period, flipping
only at local minima that linear zero-crossing prediction identifies as real
crossings.  With ``A`` known, the carrier follows by division and the complex
phase by a monotone unwrap of the carrier angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundaryCaseError,
    CarrierNormalizationError,
    ConfigError,
    DegenerateAxisError,
    HyperpolarError,
    InconsistentEnvelopeError,
    InputError,
)
from .quaternion import complex_to_quat, qconj, qmul
from .series import ComplexSeries, QuaternionSeries
from .transform import complex_negative_frequency_ratio

DEFAULT_PHASE_INIT = (0.0, math.pi / 2)
DEFAULT_ETA = 0.5
EPS_MAG_REL = 1e-12
CARRIER_TOL = 1e-9
ALPHA_TOL = 1e-9
ANALYTIC_TOL = 1e-6


# --------------------------------------------------------------------------
# data types


@dataclass(frozen=True)
class HalfPeriodCase:
    """Classification of one local minimum of a modulus channel.

    ``klass`` is ``"I"`` for a zero crossing and ``"II"`` for a positive
    minimum.  ``former_sign`` is the sign of the half-period that ends at the
    minimum (``"P"`` or ``"N"``).  ``sampling_case`` is 1 when the minimum
    sample is the last point of the former half-period and 2 when it is the
    first point of the following one.  ``zc_forward``/``zc_backward`` are the
    predicted crossing offsets from the minimum sample, in seconds, or
    ``None`` when the prediction line was horizontal.
    """

    klass: str
    former_sign: str
    sampling_case: int
    minimum_index: int
    zc_forward: float | None = None
    zc_backward: float | None = None

    @property
    def flips(self) -> bool:
        return self.klass == "I"

    @property
    def flip_start(self) -> int | None:
        """First sample carrying the new sign, or ``None`` for class II."""
        if not self.flips:
            return None
        return self.minimum_index + 1 if self.sampling_case == 1 else self.minimum_index

    @property
    def label(self) -> str:
        return f"{self.klass}-{self.former_sign}{self.sampling_case}"


@dataclass(frozen=True)
class ChannelRecovery:
    signs: np.ndarray
    minima: np.ndarray
    cases: tuple[HalfPeriodCase, ...]


@dataclass(frozen=True, eq=False)
class InstFrequencySeries:
    """Instantaneous complex frequency ``f_B`` (Hz) and optional ``f_A`` (Hz)."""

    f_B: np.ndarray
    dt: float
    t0: float = 0.0
    f_A: np.ndarray | None = None
    analytic_ratio: float | None = None

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.f_B.size)

    @property
    def f_Br(self) -> np.ndarray:
        return self.f_B.real

    @property
    def f_Bi(self) -> np.ndarray:
        return self.f_B.imag


@dataclass(frozen=True, eq=False)
class PolarDecomposition:
    """Per-sample polar form of a quaternion series.

    Attributes
    ----------
    envelope : complex ndarray
        Recovered complex envelope ``A = a + i*b``.
    phase : complex ndarray
        Unwrapped complex phase ``B = c + i*d`` in radians.
    carrier : ndarray, shape (N, 3)
        ``(alpha, beta, gamma)`` with ``exp(B*j) = alpha + j*beta + k*gamma``.
    axis : complex ndarray
        Normalized complex part of the input (carries the sign ambiguity).
    magnitude : ndarray
        ``|s[n]|``.
    phase_folded : complex ndarray
        Phase computed from ``arccos(alpha)`` without unwrapping.
    """

    envelope: np.ndarray
    phase: np.ndarray
    carrier: np.ndarray
    axis: np.ndarray
    magnitude: np.ndarray
    phase_folded: np.ndarray
    dt: float
    t0: float = 0.0
    channels: dict = field(default_factory=dict)
    axis_clamp: float = 0.0

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.envelope.size)

    @property
    def a(self):
        return self.envelope.real

    @property
    def b(self):
        return self.envelope.imag

    @property
    def c(self):
        return self.phase.real

    @property
    def d(self):
        return self.phase.imag

    @property
    def alpha(self):
        return self.carrier[:, 0]

    @property
    def beta(self):
        return self.carrier[:, 1]

    @property
    def gamma(self):
        return self.carrier[:, 2]

    @property
    def phi_A(self) -> np.ndarray:
        """Unwrapped envelope phase; the first value is ``angle(A[0])``."""
        return np.unwrap(np.angle(self.envelope))

    @property
    def envelope_ambiguous(self) -> np.ndarray:
        """``|s| * axis``: the envelope before sign recovery."""
        return self.magnitude * self.axis

    def reconstruct(self) -> QuaternionSeries:
        carrier = np.zeros((self.envelope.size, 4))
        carrier[:, 0] = self.carrier[:, 0]
        carrier[:, 2] = self.carrier[:, 1]
        carrier[:, 3] = self.carrier[:, 2]
        return QuaternionSeries(qmul(complex_to_quat(self.envelope), carrier), self.dt, self.t0)

    def cases(self, channel: str) -> tuple[HalfPeriodCase, ...]:
        return self.channels[channel].cases


@dataclass(frozen=True)
class DecomposeConfig:
    """Knobs of :func:`decompose`.

    ``eps_mag`` is absolute; when ``None`` it defaults to
    ``1e-12 * max|s|``.  ``unwrap`` selects the phase unwrapper:
    ``"quadrant"`` (sign of ``sin|B|`` from the canonical quadrant of the
    carrier axis) or ``"reflection"`` (boundary-reflection detection on
    ``arccos(alpha)`` alone).
    """

    phase_init_range: tuple[float, float] = DEFAULT_PHASE_INIT
    eta: float = DEFAULT_ETA
    eps_mag: float | None = None
    mask_degenerate: bool = False
    b0_low: float = 0.0
    unwrap: str = "quadrant"
    envelope_frequency: bool = False
    analytic_tol: float = ANALYTIC_TOL


# --------------------------------------------------------------------------
# axis


def _eps(magnitude, eps_mag):
    if eps_mag is None:
        peak = float(np.max(magnitude)) if magnitude.size else 0.0
        return EPS_MAG_REL * peak
    return float(eps_mag)


def axis_normalize(s: QuaternionSeries, eps_mag=None, mask_degenerate=False):
    """Magnitude ``|s[n]|`` and axis ``(q_r + i q_i)/|q_r + i q_i|``.

    A sample whose complex part has modulus ``<= eps_mag`` has no axis; this
    raises :class:`DegenerateAxisError` unless ``mask_degenerate`` is set, in
    which case the axis there is ``nan``.
    """
    q = s.values
    magnitude = np.sqrt(np.sum(q * q, axis=1))
    z = q[:, 0] + 1j * q[:, 1]
    zabs = np.abs(z)
    eps = _eps(magnitude, eps_mag)
    bad = zabs <= eps
    if np.any(bad) and not mask_degenerate:
        idx = int(np.flatnonzero(bad)[0])
        raise DegenerateAxisError(
            f"complex part vanishes (|q_r + i q_i| = {zabs[idx]:.3g} <= {eps:.3g}), axis undefined",
            stage="axis_normalize",
            index=idx,
        )
    axis = np.full(z.shape, np.nan + 1j * np.nan)
    ok = ~bad
    axis[ok] = z[ok] / zabs[ok]
    return magnitude, axis


# --------------------------------------------------------------------------
# zero-crossing prediction and minimum classification


def predict_zero_crossing(t_n, t_n1, v_n, v_n1):
    """Zero of the line through ``(t_n, v_n)`` and ``(t_n1, v_n1)``.

    Returns ``None`` when the line is horizontal.  The zero may lie outside
    ``[t_n, t_n1]``.
    """
    if v_n1 == v_n:
        return None
    return t_n1 - v_n1 * (t_n1 - t_n) / (v_n1 - v_n)


def local_minima(m) -> np.ndarray:
    """Indices ``n`` with ``m[n-1] > m[n]`` and the next differing value larger.

    Plateaus collapse to their leftmost index; the two end samples are never
    reported.
    """
    m = np.asarray(m, dtype=float)
    n_samples = m.size
    out = []
    n = 1
    while n < n_samples - 1:
        if m[n - 1] > m[n]:
            k = n + 1
            while k < n_samples and m[k] == m[n]:
                k += 1
            if k < n_samples and m[k] > m[n]:
                out.append(n)
            n = k
        else:
            n += 1
    return np.asarray(out, dtype=int)


def classify_minimum(m, n, dt=1.0, former_sign=1, peak=None, eta=DEFAULT_ETA) -> HalfPeriodCase:
    """Classify the local minimum ``n`` of the modulus channel ``m``.

    Two crossings are predicted with :func:`predict_zero_crossing`: forward
    from the descending pair ``(n-1, n)`` and backward from the ascending pair
    ``(n, n+1)``.  A forward prediction inside ``[t_n, t_n+1]`` means the
    crossing follows the minimum sample (sampling case 1); a backward one
    inside ``[t_n-1, t_n]`` means it precedes it (case 2).  When both are
    valid the minimum sits almost on the crossing and the two offsets differ
    only through curvature; the side is then read from the cubic through the
    signed neighbours ``n-2, n-1, n+1, n+2`` evaluated at ``t_n`` (the closer
    prediction decides when those neighbours are missing).  Ties go to
    case 1.  If neither is valid, or ``m[n] > eta * peak``, the minimum is
    class II.
    """
    m = np.asarray(m, dtype=float)
    if n <= 0 or n >= m.size - 1:
        raise BoundaryCaseError("minimum at the series boundary cannot be classified", index=int(n))
    if peak is None:
        peak = float(np.max(m))
    sign_label = "P" if former_sign >= 0 else "N"

    fwd = predict_zero_crossing(-dt, 0.0, m[n - 1], m[n])
    bwd = predict_zero_crossing(0.0, dt, m[n], m[n + 1])
    fwd_ok = fwd is not None and 0.0 <= fwd <= dt
    bwd_ok = bwd is not None and -dt <= bwd <= 0.0

    if m[n] <= eta * peak and (fwd_ok or bwd_ok):
        if fwd_ok and bwd_ok:
            case = _straddle_case(m, n, fwd, bwd)
        else:
            case = 1 if fwd_ok else 2
        return HalfPeriodCase("I", sign_label, case, int(n), fwd, bwd)
    # positive minimum: case 1 when the underlying dip bottoms out at or after t_n
    case = 1 if m[n - 1] >= m[n + 1] else 2
    return HalfPeriodCase("II", sign_label, case, int(n), fwd, bwd)


def _straddle_case(m, n, fwd, bwd):
    if 2 <= n <= m.size - 3:
        # former side positive, following side negative
        x_hat = (-m[n - 2] + 4 * m[n - 1] - 4 * m[n + 1] + m[n + 2]) / 6
        return 1 if x_hat >= 0 else 2
    return 1 if fwd <= -bwd else 2


def initial_signs(phase_init_range=DEFAULT_PHASE_INIT) -> tuple[int, int]:
    """Signs of ``(cos, sin)`` over a quarter-plane interval of ``phi_A(0)``."""
    lo, hi = (float(x) for x in phase_init_range)
    quarter = math.pi / 2
    slack = 1e-9
    if not hi >= lo:
        raise ConfigError(f"phase_init_range must satisfy low <= high, got {phase_init_range!r}")
    k = math.floor(lo / quarter + slack)
    if hi > (k + 1) * quarter + slack:
        raise ConfigError(f"phase_init_range {phase_init_range!r} is not inside a single quadrant")
    mid = (k + 0.5) * quarter
    return (1 if math.cos(mid) > 0 else -1), (1 if math.sin(mid) > 0 else -1)


def recover_channel(m, dt, init_sign=1, eta=DEFAULT_ETA) -> ChannelRecovery:
    """Signs for one modulus channel, walking its minima left to right."""
    m = np.asarray(m, dtype=float)
    n_samples = m.size
    minima = local_minima(m)
    bounds = np.concatenate([[0], minima, [n_samples - 1]])
    peaks = [float(np.max(m[bounds[k] : bounds[k + 1] + 1])) for k in range(bounds.size - 1)]

    signs = np.empty(n_samples)
    current = 1 if init_sign >= 0 else -1
    start = 0
    cases = []
    for idx, n in enumerate(minima):
        peak = max(peaks[idx], peaks[idx + 1])
        case = classify_minimum(m, n, dt, current, peak, eta)
        cases.append(case)
        if case.flips:
            stop = case.flip_start
            signs[start:stop] = current
            current = -current
            start = stop
    signs[start:] = current
    return ChannelRecovery(signs, minima, tuple(cases))


def _interp_nan(x):
    x = np.array(x, dtype=float)
    bad = np.isnan(x)
    if np.all(bad):
        raise DegenerateAxisError("no sample has a defined axis")
    if np.any(bad):
        idx = np.arange(x.size)
        x[bad] = np.interp(idx[bad], idx[~bad], x[~bad])
    return x


@dataclass(frozen=True, eq=False)
class _EnvelopeDetail:
    envelope: np.ndarray
    magnitude: np.ndarray
    axis: np.ndarray
    channels: dict


def envelope_moduli(magnitude, axis):
    """``(|a|, |b|) = |s| * (|axis_r|, |axis_i|)``.

    Where the axis is undefined its components are interpolated before
    scaling, so a vanishing ``|s|`` still yields a zero of the channel.
    """
    return magnitude * _interp_nan(np.abs(axis.real)), magnitude * _interp_nan(np.abs(axis.imag))


def _recover_envelope(s, phase_init_range, eta, eps_mag, mask_degenerate):
    magnitude, axis = axis_normalize(s, eps_mag, mask_degenerate)
    mod_a, mod_b = envelope_moduli(magnitude, axis)
    sign_a, sign_b = initial_signs(phase_init_range)
    ch_a = recover_channel(mod_a, s.dt, sign_a, eta)
    ch_b = recover_channel(mod_b, s.dt, sign_b, eta)
    envelope = ch_a.signs * mod_a + 1j * (ch_b.signs * mod_b)
    masked = np.isnan(axis.real)
    if np.any(masked):
        # interpolated moduli need not satisfy |A| = |s|; restore it on the masked samples
        e = envelope[masked]
        scale = np.where(np.abs(e) > 0, magnitude[masked] / np.where(np.abs(e) > 0, np.abs(e), 1.0), 0.0)
        envelope[masked] = np.where(np.abs(e) > 0, e * scale, magnitude[masked])
    return _EnvelopeDetail(envelope, magnitude, axis, {"a": ch_a, "b": ch_b})


def recover_envelope(
    s: QuaternionSeries,
    phase_init_range=DEFAULT_PHASE_INIT,
    eta=DEFAULT_ETA,
    eps_mag=None,
    mask_degenerate=False,
) -> ComplexSeries:
    """Complex envelope ``A`` with ``|A| = |s|`` and continuous sign.

    The real and imaginary channels are handled independently.  Each
    channel's modulus ``|a| = |s| * |axis_r|`` (resp. ``|b|``) is signed
    half-period by half-period, starting from the quadrant given by
    ``phase_init_range`` and flipping after every class-I minimum.  Scaling
    the unit axis by ``|s|`` lets zeros of ``|A|`` itself register as
    crossings; for unit-magnitude signals it changes nothing.
    """
    detail = _recover_envelope(s, phase_init_range, eta, eps_mag, mask_degenerate)
    return ComplexSeries(detail.envelope, s.dt, s.t0)


# --------------------------------------------------------------------------
# carrier and phase


def extract_carrier(s: QuaternionSeries, A, eps_mag=None, tol=CARRIER_TOL, mask_degenerate=False) -> np.ndarray:
    """Carrier ``conj(A) * s / |s|^2`` as an ``(N, 3)`` array ``(alpha, beta, gamma)``.

    Raises :class:`InconsistentEnvelopeError` when ``|A| != |s|`` or the
    quotient has an ``i`` component above ``tol``: such an ``A`` is not an
    envelope of ``s``.  Samples with ``|s| <= eps_mag`` are an error unless
    ``mask_degenerate`` is set; the carrier is then interpolated through them.
    """
    A = np.asarray(A.values if isinstance(A, ComplexSeries) else A, dtype=complex)
    q = s.values
    if A.shape != (q.shape[0],):
        raise InputError(f"envelope length {A.shape} does not match series length {q.shape[0]}")
    n2 = np.sum(q * q, axis=1)
    mag = np.sqrt(n2)
    eps = _eps(mag, eps_mag)
    tiny = mag <= eps
    if np.any(tiny) and not mask_degenerate:
        idx = int(np.flatnonzero(tiny)[0])
        raise DegenerateAxisError(f"|s| = {mag[idx]:.3g} <= {eps:.3g}, carrier undefined", index=idx)
    ok = ~tiny
    rel = np.zeros_like(mag)
    rel[ok] = np.abs(np.abs(A[ok]) - mag[ok]) / mag[ok]
    if np.any(rel > tol):
        idx = int(np.argmax(rel))
        raise InconsistentEnvelopeError(f"|A| differs from |s| by {rel[idx]:.3g} (relative)", index=idx)
    quot = qmul(qconj(complex_to_quat(A)), q) / np.where(ok, n2, 1.0)[:, None]
    off = np.where(ok, np.abs(quot[:, 1]), 0.0)
    if np.any(off > tol):
        idx = int(np.argmax(off))
        raise InconsistentEnvelopeError(f"carrier i-part {off[idx]:.3g} exceeds {tol:g}", index=idx)
    unit = np.where(ok, np.abs(np.sqrt(np.sum(quot * quot, axis=1)) - 1.0), 0.0)
    if np.any(unit > tol):
        idx = int(np.argmax(unit))
        raise InconsistentEnvelopeError(f"carrier norm off unity by {unit[idx]:.3g}", index=idx)
    carrier = np.stack([quot[:, 0], quot[:, 2], quot[:, 3]], axis=1)
    if np.any(tiny):
        carrier[tiny] = np.nan
        carrier = np.stack([_interp_nan(col) for col in carrier.T], axis=1)
        carrier /= np.sqrt(np.sum(carrier * carrier, axis=1))[:, None]
    return carrier


def _checked_alpha(carrier):
    carrier = np.asarray(carrier, dtype=float)
    alpha = carrier[:, 0]
    over = np.abs(alpha) - 1.0
    if np.any(over > ALPHA_TOL):
        idx = int(np.argmax(over))
        raise CarrierNormalizationError(f"|alpha| = {abs(alpha[idx]):.12g} exceeds 1", index=idx)
    return np.clip(alpha, -1.0, 1.0)


def _fill_undefined(u, defined):
    """Carry the nearest defined axis value into samples where it is undefined."""
    if np.all(defined):
        return u
    if not np.any(defined):
        return np.ones_like(u)
    idx = np.arange(u.size)
    good = idx[defined]
    pos = np.clip(np.searchsorted(good, idx), 0, good.size - 1)
    left = good[np.clip(pos - 1, 0, good.size - 1)]
    right = good[pos]
    nearest = np.where(np.abs(idx - left) <= np.abs(right - idx), left, right)
    return np.where(defined, u, u[nearest])


def fold_phase(carrier) -> np.ndarray:
    """Phase ``axis(beta + i*gamma) * arccos(alpha)`` without any unwrapping."""
    carrier = np.asarray(carrier, dtype=float)
    alpha = _checked_alpha(carrier)
    w = carrier[:, 1] + 1j * carrier[:, 2]
    wabs = np.abs(w)
    u = np.where(wabs > 0, w / np.where(wabs > 0, wabs, 1.0), 0.0)
    return u * np.arccos(alpha)


def unwrap_cosine_phase(theta, delta=None, falling=False) -> np.ndarray:
    """Unwrap ``theta = arccos(cos(Theta))`` into a non-decreasing ``Theta``.

    ``theta`` lives in ``[0, pi]``; a non-decreasing ``Theta`` makes it rise
    to ``pi``, reflect, fall to ``0``, reflect, and so on.  A reflection is
    declared where ``theta`` is within ``delta`` of the boundary it is heading
    for and steps the wrong way (``delta`` defaults to ten times the largest
    step).  The crossing is then placed either before or after the previous
    sample, whichever gives the smaller second difference.  ``falling``
    starts on the descending branch, i.e. ``Theta[0]`` in ``(pi, 2*pi)``.
    """
    theta = np.asarray(theta, dtype=float)
    n_samples = theta.size
    if n_samples < 2:
        return theta.copy()
    if delta is None:
        delta = 10.0 * float(np.max(np.abs(np.diff(theta))))

    def lift(x, r):
        return r * np.pi + x if r % 2 == 0 else (r + 1) * np.pi - x

    out = np.empty(n_samples)
    refl = 1 if falling else 0
    out[0] = lift(theta[0], refl)
    for n in range(1, n_samples):
        step = theta[n] - theta[n - 1]
        rising = refl % 2 == 0
        boundary = np.pi if rising else 0.0
        near = abs(theta[n] - boundary) <= delta or abs(theta[n - 1] - boundary) <= delta
        if near and ((rising and step < 0) or (not rising and step > 0)):
            refl += 1
            if n >= 3:
                late = lift(theta[n - 1], refl - 1)
                early = lift(theta[n - 1], refl)
                pred = 2 * out[n - 2] - out[n - 3]
                if abs(early - pred) < abs(late - pred):
                    out[n - 1] = early
        out[n] = lift(theta[n], refl)
    return out


def recover_phase(carrier, b0_low=0.0, method="quadrant") -> np.ndarray:
    """Complex phase ``B = c + i*d`` from the carrier.

    ``|B|`` is the unwrapped carrier angle ``arccos(alpha)`` continued past
    its ``[0, pi]`` range, with ``|B[0]|`` in ``[b0_low, b0_low + 2*pi)``.
    The direction of ``B`` is the axis of ``beta + i*gamma`` corrected by
    ``sgn(sin|B|)``.

    ``method="quadrant"`` reads ``sgn(sin|B|)`` directly from
    ``sgn(beta + gamma)``: the canonical axis has ``c, d >= 0`` so
    ``beta + gamma = sin|B| * (c + d)/|B|`` carries the sign of ``sin|B|``.
    The angle is then ``atan2`` of the signed sine and ``alpha``, which stays
    accurate near the fold points where ``arccos`` loses half its digits.
    Small negative components left by noise are projected onto the quadrant.

    ``method="reflection"`` uses only ``arccos(alpha)`` and
    :func:`unwrap_cosine_phase`, then ``sgn(sin)`` of the result.
    """
    carrier = np.asarray(carrier, dtype=float)
    if carrier.ndim != 2 or carrier.shape[1] != 3:
        raise InputError(f"carrier must have shape (N, 3), got {carrier.shape}")
    alpha = _checked_alpha(carrier)
    beta, gamma = carrier[:, 1], carrier[:, 2]
    w = beta + 1j * gamma
    wabs = np.abs(w)
    defined = wabs > 0

    if method == "quadrant":
        sgn = np.where(beta + gamma >= 0, 1.0, -1.0)
        wrapped = np.mod(np.arctan2(sgn * wabs, alpha), 2 * np.pi)
        start = b0_low + np.mod(wrapped[0] - b0_low, 2 * np.pi)
        theta = start + np.concatenate([[0.0], np.cumsum(_wrap_step(np.diff(wrapped)))])
        u = np.where(defined, sgn * w / np.where(defined, wabs, 1.0), 0.0)
        u = _fill_undefined(u, defined)
        ur = np.maximum(u.real, 0.0)
        ui = np.maximum(u.imag, 0.0)
        un = np.hypot(ur, ui)
        un = np.where(un > 0, un, 1.0)
        axis = (ur + 1j * ui) / un
    elif method == "reflection":
        # arccos cannot tell Theta from 2*pi - Theta; the quadrant sign settles the first sample
        theta = unwrap_cosine_phase(np.arccos(alpha), falling=bool(beta[0] + gamma[0] < 0))
        theta = theta - 2 * np.pi * math.floor((theta[0] - b0_low) / (2 * np.pi))
        u = np.where(defined, w / np.where(defined, wabs, 1.0), 0.0)
        u = _fill_undefined(u, defined)
        sigma = np.where(np.sin(theta) < 0, -1.0, 1.0)
        axis = sigma * u
    else:
        raise ConfigError(f"unknown unwrap method {method!r}")
    return theta * axis


def _wrap_step(d):
    return np.mod(d + np.pi, 2 * np.pi) - np.pi


def axis_clamp_residual(carrier) -> float:
    """Largest negative axis component removed by the quadrant projection."""
    carrier = np.asarray(carrier, dtype=float)
    beta, gamma = carrier[:, 1], carrier[:, 2]
    wabs = np.hypot(beta, gamma)
    ok = wabs > 0
    if not np.any(ok):
        return 0.0
    sgn = np.where(beta + gamma >= 0, 1.0, -1.0)[ok]
    ur = sgn * beta[ok] / wabs[ok]
    ui = sgn * gamma[ok] / wabs[ok]
    return float(max(0.0, -ur.min(), -ui.min()))


# --------------------------------------------------------------------------
# frequency


def instantaneous_frequency(B, dt, phi_A=None, t0=0.0) -> InstFrequencySeries:
    """``f_B = (dc/dt + i*dd/dt) / 2pi`` and optionally ``f_A = dphi_A/dt / 2pi``.

    Three-point central differences inside, two-point one-sided differences
    at the ends.
    """
    B = np.asarray(B.values if isinstance(B, ComplexSeries) else B, dtype=complex)
    if B.size < 3:
        raise InputError(f"instantaneous_frequency: series too short ({B.size} samples, need 3)")
    f_B = (np.gradient(B.real, dt) + 1j * np.gradient(B.imag, dt)) / (2 * np.pi)
    f_A = None
    if phi_A is not None:
        f_A = np.gradient(np.asarray(phi_A, dtype=float), dt) / (2 * np.pi)
    return InstFrequencySeries(f_B, float(dt), float(t0), f_A)


# --------------------------------------------------------------------------
# full pipeline


def _run_stage(name, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except HyperpolarError as exc:
        if exc.stage is None:
            exc.stage = name
        raise


def decompose(s: QuaternionSeries, config: DecomposeConfig | None = None):
    """Unique polar form of ``s``.

    Returns ``(PolarDecomposition, InstFrequencySeries)``.  The result is a
    deterministic function of ``s`` and ``config``.
    """
    if config is None:
        config = DecomposeConfig()
    if not isinstance(s, QuaternionSeries):
        raise InputError(f"decompose expects a QuaternionSeries, got {type(s).__name__}")

    env = _run_stage(
        "recover_envelope",
        _recover_envelope,
        s,
        config.phase_init_range,
        config.eta,
        config.eps_mag,
        config.mask_degenerate,
    )
    carrier = _run_stage(
        "extract_carrier",
        extract_carrier,
        s,
        env.envelope,
        config.eps_mag,
        mask_degenerate=config.mask_degenerate,
    )
    phase = _run_stage("recover_phase", recover_phase, carrier, config.b0_low, config.unwrap)
    folded = _run_stage("recover_phase", fold_phase, carrier)

    phi_A = None
    ratio = None
    if config.envelope_frequency:
        ratio = complex_negative_frequency_ratio(env.envelope)
        if ratio < config.analytic_tol:
            phi_A = np.unwrap(np.angle(env.envelope))
    freq = _run_stage("instantaneous_frequency", instantaneous_frequency, phase, s.dt, phi_A, s.t0)
    if ratio is not None:
        freq = InstFrequencySeries(freq.f_B, freq.dt, freq.t0, freq.f_A, ratio)

    polar = PolarDecomposition(
        envelope=env.envelope,
        phase=phase,
        carrier=carrier,
        axis=env.axis,
        magnitude=env.magnitude,
        phase_folded=folded,
        dt=s.dt,
        t0=s.t0,
        channels=env.channels,
        axis_clamp=axis_clamp_residual(carrier) if config.unwrap == "quadrant" else 0.0,
    )
    return polar, freq
