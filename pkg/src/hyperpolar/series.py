"""Uniformly sampled complex and quaternion series."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .quaternion import as_quat_array, cayley_join, cayley_split

MIN_LENGTH = 4


def _check_grid(dt, n, what):
    if not np.isfinite(dt) or dt <= 0:
        raise InputError(f"{what}: sample interval must be positive, got {dt!r}")
    if n < MIN_LENGTH:
        raise InputError(f"{what}: series too short ({n} samples, need at least {MIN_LENGTH})")


@dataclass(frozen=True, eq=False)
class ComplexSeries:
    """Complex samples ``z[n] = z_r[n] + i z_i[n]`` at ``t0 + n*dt``."""

    values: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        values = np.asarray(self.values, dtype=complex)
        if values.ndim != 1:
            raise InputError(f"ComplexSeries: values must be one-dimensional, got shape {values.shape}")
        _check_grid(self.dt, values.size, "ComplexSeries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    def __len__(self):
        return self.values.size

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    @property
    def fs(self) -> float:
        return 1.0 / self.dt

    @property
    def real(self) -> np.ndarray:
        return self.values.real

    @property
    def imag(self) -> np.ndarray:
        return self.values.imag

    def with_values(self, values) -> "ComplexSeries":
        return ComplexSeries(values, self.dt, self.t0)


@dataclass(frozen=True, eq=False)
class QuaternionSeries:
    """Quaternion samples stored as an ``(N, 4)`` array of ``(r, i, j, k)``."""

    values: np.ndarray
    dt: float
    t0: float = 0.0

    def __post_init__(self):
        values = np.array(as_quat_array(self.values), dtype=float)
        if values.ndim != 2:
            raise InputError(f"QuaternionSeries: values must have shape (N, 4), got {values.shape}")
        _check_grid(self.dt, values.shape[0], "QuaternionSeries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "t0", float(self.t0))

    @classmethod
    def from_cayley(cls, z1, z2, dt, t0=0.0) -> "QuaternionSeries":
        return cls(cayley_join(z1, z2), dt, t0)

    def __len__(self):
        return self.values.shape[0]

    @property
    def t(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(len(self))

    def cayley(self) -> tuple[np.ndarray, np.ndarray]:
        return cayley_split(self.values)

    def complex_part(self) -> ComplexSeries:
        """The ``z1 = r + i*qi`` half as a :class:`ComplexSeries`."""
        return ComplexSeries(cayley_split(self.values)[0], self.dt, self.t0)

    def norm(self) -> np.ndarray:
        return np.sqrt(np.sum(self.values**2, axis=1))


@dataclass(frozen=True, eq=False)
class QSpectrum:
    """Right quaternion Fourier coefficients on the standard DFT bin layout.

    ``frequencies`` are angular frequencies in rad/s in ``numpy.fft.fftfreq``
    order (DC first, negative bins in the second half).
    """

    frequencies: np.ndarray
    coefficients: np.ndarray
    dt: float
    t0: float = 0.0
    meta: dict = field(default_factory=dict)

    def __len__(self):
        return self.frequencies.size

    def energy(self) -> np.ndarray:
        return np.sum(self.coefficients**2, axis=1)

    def negative_energy_ratio(self) -> float:
        """Fraction of spectral energy held by strictly negative-frequency bins."""
        e = self.energy()
        total = e.sum()
        if total == 0.0:
            return 0.0
        return float(e[self.frequencies < 0].sum() / total)
