"""Right quaternion Fourier transform, quaternionic Hilbert transform and the
hyperanalytic signal, all on the j-axis.

Conventions
-----------
Bin ``k`` of a length-``N`` series sampled every ``dt`` seconds sits at the
angular frequency ``omega_k = 2*pi*fftfreq(N, dt)[k]``.  The forward kernel is
``exp(-j*omega_k*(t_n - t0))`` applied on the right of the signal, with no
``dt`` or ``1/N`` factor; the inverse carries ``1/N``.  Time is measured from
the first sample, so the transform does not depend on ``t0``.

A quaternion ``q = r + i*qi + j*qj + k*qk`` is written as ``P + i*Q`` with
``P = r + j*qj`` and ``Q = qi + j*qk`` both in the commutative plane spanned
by ``{1, j}``.  Right multiplication by ``exp(-j*w*t)`` acts on ``P`` and
``Q`` separately, so the quaternion transform reduces to two ordinary complex
FFTs with ``j`` playing the role of the imaginary unit.
"""

from __future__ import annotations

import numpy as np

from .errors import InputError
from .series import MIN_LENGTH, ComplexSeries, QSpectrum, QuaternionSeries


def _as_quat_values(x):
    if isinstance(x, QuaternionSeries):
        return x.values, x.dt, x.t0, False
    if isinstance(x, ComplexSeries):
        z = x.values
        q = np.zeros((z.size, 4))
        q[:, 0] = z.real
        q[:, 1] = z.imag
        return q, x.dt, x.t0, True
    raise InputError(f"expected ComplexSeries or QuaternionSeries, got {type(x).__name__}")


def angular_frequencies(n: int, dt: float) -> np.ndarray:
    return 2.0 * np.pi * np.fft.fftfreq(n, dt)


def qft_j(x: ComplexSeries | QuaternionSeries) -> QSpectrum:
    """Right QFT along j.

    For a complex input ``z = z_r + i*z_i`` this is ``F_j[z_r] + i*F_j[z_i]``,
    where ``F_j`` is the DFT with ``j`` as its imaginary unit.
    """
    q, dt, t0, from_complex = _as_quat_values(x)
    n = q.shape[0]
    if n < MIN_LENGTH:
        raise InputError(f"qft_j: need at least {MIN_LENGTH} samples, got {n}")
    p_hat = np.fft.fft(q[:, 0] + 1j * q[:, 2])
    q_hat = np.fft.fft(q[:, 1] + 1j * q[:, 3])
    coeffs = np.stack([p_hat.real, q_hat.real, p_hat.imag, q_hat.imag], axis=1)
    return QSpectrum(angular_frequencies(n, dt), coeffs, dt, t0, meta={"from_complex": from_complex})


def qft_j_inv(spectrum: QSpectrum) -> QuaternionSeries:
    c = spectrum.coefficients
    p = np.fft.ifft(c[:, 0] + 1j * c[:, 2])
    q = np.fft.ifft(c[:, 1] + 1j * c[:, 3])
    values = np.stack([p.real, q.real, p.imag, q.imag], axis=1)
    return QuaternionSeries(values, spectrum.dt, spectrum.t0)


def hilbert_multiplier(n: int) -> np.ndarray:
    """``-1j*sgn(omega)`` on the DFT bins, zero at DC and (even ``n``) Nyquist."""
    h = np.zeros(n, dtype=complex)
    half = (n - 1) // 2
    h[1 : half + 1] = -1j
    h[n - half :] = 1j
    return h


def hilbert_real(x: np.ndarray) -> np.ndarray:
    """Discrete Hilbert transform of a real sequence."""
    x = np.asarray(x, dtype=float)
    return np.fft.ifft(hilbert_multiplier(x.size) * np.fft.fft(x)).real


def qht_j(z: ComplexSeries) -> ComplexSeries:
    """Quaternionic Hilbert transform along j: ``H[z_r] + i*H[z_i]``.

    The j-multiplier ``-j*sgn(omega)`` is applied on the right of the
    spectrum, which is what makes the result split channel-wise.
    """
    if not isinstance(z, ComplexSeries):
        raise InputError(f"qht_j expects a ComplexSeries, got {type(z).__name__}")
    values = hilbert_real(z.real) + 1j * hilbert_real(z.imag)
    return z.with_values(values)


def hyperanalytic(z: ComplexSeries) -> QuaternionSeries:
    """Hyperanalytic signal ``s = z + o*j`` with ``o = qht_j(z)``."""
    o = qht_j(z)
    return QuaternionSeries.from_cayley(z.values, o.values, z.dt, z.t0)


def negative_frequency_ratio(x: ComplexSeries | QuaternionSeries) -> float:
    return qft_j(x).negative_energy_ratio()


def complex_negative_frequency_ratio(values: np.ndarray) -> float:
    """Negative-bin energy fraction of an ordinary complex sequence.

    Used as the analyticity test for the complex envelope.
    """
    values = np.asarray(values, dtype=complex)
    e = np.abs(np.fft.fft(values)) ** 2
    total = e.sum()
    if total == 0.0:
        return 0.0
    freqs = np.fft.fftfreq(values.size)
    return float(e[freqs < 0].sum() / total)
