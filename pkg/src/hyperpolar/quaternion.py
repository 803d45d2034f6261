"""Hamilton quaternions.

Two layers are provided.  The array functions (``qmul``, ``qconj``, ``qexp``
...) operate on float arrays whose last axis holds the components
``(r, i, j, k)`` and are what the signal code uses.  :class:`Quaternion` is an
immutable scalar wrapper around the same functions for interactive use and
tests.

Basis rules: ``i*i = j*j = k*k = i*j*k = -1``, hence ``ij = k``, ``jk = i``,
``ki = j`` and the reversed products change sign.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import QuaternionDomainError

# below this vector norm exp() switches to the series form of sin(x)/x
EXP_SERIES_THRESHOLD = 1e-8


def as_quat_array(q) -> np.ndarray:
    q = np.asarray(q, dtype=float)
    if q.shape[-1:] != (4,):
        raise ValueError(f"quaternion arrays need a trailing axis of length 4, got shape {q.shape}")
    return q


def qmul(p, q) -> np.ndarray:
    """Hamilton product ``p * q`` (broadcasts over leading axes)."""
    p = as_quat_array(p)
    q = as_quat_array(q)
    pr, pi, pj, pk = np.moveaxis(p, -1, 0)
    qr, qi, qj, qk = np.moveaxis(q, -1, 0)
    return np.stack(
        [
            pr * qr - pi * qi - pj * qj - pk * qk,
            pr * qi + pi * qr + pj * qk - pk * qj,
            pr * qj - pi * qk + pj * qr + pk * qi,
            pr * qk + pi * qj - pj * qi + pk * qr,
        ],
        axis=-1,
    )


def qconj(q) -> np.ndarray:
    q = as_quat_array(q)
    return q * np.array([1.0, -1.0, -1.0, -1.0])


def qnorm(q) -> np.ndarray:
    q = as_quat_array(q)
    return np.sqrt(np.sum(q * q, axis=-1))


def qscalar(q) -> np.ndarray:
    return as_quat_array(q)[..., 0]


def qvector(q) -> np.ndarray:
    """Copy of ``q`` with the scalar part zeroed."""
    v = np.array(as_quat_array(q), copy=True)
    v[..., 0] = 0.0
    return v


def qinverse(q) -> np.ndarray:
    q = as_quat_array(q)
    n2 = np.sum(q * q, axis=-1)
    if np.any(n2 == 0.0):
        raise QuaternionDomainError("zero quaternion has no inverse")
    return qconj(q) / n2[..., None]


def qexp(q) -> np.ndarray:
    """Quaternion exponential ``e^S (cos|V| + V/|V| sin|V|)``.

    The vector factor ``sin|V|/|V|`` is evaluated by its Taylor series when
    ``|V| < EXP_SERIES_THRESHOLD``, so a real input gives exactly ``e^{q_r}``.
    """
    q = as_quat_array(q)
    v = q[..., 1:]
    vn = np.sqrt(np.sum(v * v, axis=-1))
    small = vn < EXP_SERIES_THRESHOLD
    safe = np.where(small, 1.0, vn)
    sinc = np.where(small, 1.0 - vn * vn / 6.0, np.sin(vn) / safe)
    scale = np.exp(q[..., 0])
    out = np.empty(q.shape, dtype=float)
    out[..., 0] = scale * np.cos(vn)
    out[..., 1:] = (scale * sinc)[..., None] * v
    return out


def qlog(q) -> np.ndarray:
    """Quaternion logarithm ``ln|q| + V/|V| * arccos(S/|q|)``.

    Raises :class:`QuaternionDomainError` for the zero quaternion and for
    negative reals, where the axis ``V/|V|`` is indeterminate.
    """
    q = as_quat_array(q)
    v = q[..., 1:]
    vn = np.sqrt(np.sum(v * v, axis=-1))
    n = np.sqrt(q[..., 0] ** 2 + vn * vn)
    if np.any(n == 0.0):
        raise QuaternionDomainError("zero quaternion has no logarithm")
    if np.any((vn == 0.0) & (q[..., 0] < 0.0)):
        raise QuaternionDomainError("log axis undefined for a negative real quaternion")
    # atan2(|V|, S) equals arccos(S/|q|) but keeps full precision near 0 and pi
    angle = np.arctan2(vn, q[..., 0])
    safe = np.where(vn == 0.0, 1.0, vn)
    out = np.empty(q.shape, dtype=float)
    out[..., 0] = np.log(n)
    out[..., 1:] = (angle / safe)[..., None] * v
    return out


def cayley_split(q) -> tuple[np.ndarray, np.ndarray]:
    """Split ``q = z1 + z2*j`` into ``z1 = r + i*qi`` and ``z2 = qj + i*qk``."""
    q = as_quat_array(q)
    return q[..., 0] + 1j * q[..., 1], q[..., 2] + 1j * q[..., 3]


def cayley_join(z1, z2) -> np.ndarray:
    z1 = np.asarray(z1, dtype=complex)
    z2 = np.asarray(z2, dtype=complex)
    z1, z2 = np.broadcast_arrays(z1, z2)
    return np.stack([z1.real, z1.imag, z2.real, z2.imag], axis=-1)


def complex_to_quat(z) -> np.ndarray:
    """Embed complex numbers ``a + ib`` as quaternions ``a + i*b``."""
    return cayley_join(z, 0.0)


@dataclass(frozen=True)
class ComplexPair:
    z1: complex
    z2: complex


@dataclass(frozen=True)
class Quaternion:
    r: float = 0.0
    i: float = 0.0
    j: float = 0.0
    k: float = 0.0

    @classmethod
    def from_array(cls, a) -> "Quaternion":
        r, i, j, k = (float(x) for x in as_quat_array(a))
        return cls(r, i, j, k)

    @classmethod
    def from_complex(cls, z: complex) -> "Quaternion":
        z = complex(z)
        return cls(z.real, z.imag, 0.0, 0.0)

    def to_array(self) -> np.ndarray:
        return np.array([self.r, self.i, self.j, self.k], dtype=float)

    def __iter__(self):
        return iter((self.r, self.i, self.j, self.k))

    def _coerce(self, other):
        if isinstance(other, Quaternion):
            return other
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Quaternion(float(other))
        if isinstance(other, (complex, np.complexfloating)):
            return Quaternion.from_complex(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Quaternion(self.r + other.r, self.i + other.i, self.j + other.j, self.k + other.k)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.r, -self.i, -self.j, -self.k)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, other)

    def __rmul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(other, self)

    def __truediv__(self, other):
        if isinstance(other, (int, float, np.floating, np.integer)):
            return Quaternion(self.r / other, self.i / other, self.j / other, self.k / other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return mul(self, inverse(other))

    def __abs__(self):
        return norm(self)

    def isclose(self, other, tol=1e-12) -> bool:
        other = self._coerce(other)
        return bool(np.max(np.abs(self.to_array() - other.to_array())) <= tol)

    def conj(self):
        return conj(self)

    def norm(self):
        return norm(self)

    def inverse(self):
        return inverse(self)

    def exp(self):
        return exp(self)

    def log(self):
        return log(self)

    @property
    def scalar(self) -> float:
        return self.r

    @property
    def vector(self) -> "Quaternion":
        return Quaternion(0.0, self.i, self.j, self.k)


ONE = Quaternion(1.0)
I = Quaternion(0.0, 1.0)
J = Quaternion(0.0, 0.0, 1.0)
K = Quaternion(0.0, 0.0, 0.0, 1.0)


def mul(p: Quaternion, q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qmul(p.to_array(), q.to_array()))


def conj(q: Quaternion) -> Quaternion:
    return Quaternion(q.r, -q.i, -q.j, -q.k)


def norm(q: Quaternion) -> float:
    return math.sqrt(q.r * q.r + q.i * q.i + q.j * q.j + q.k * q.k)


def inverse(q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qinverse(q.to_array()))


def scalar_part(q: Quaternion) -> float:
    return q.r


def vector_part(q: Quaternion) -> Quaternion:
    return q.vector


def exp(q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qexp(q.to_array()))


def log(q: Quaternion) -> Quaternion:
    return Quaternion.from_array(qlog(q.to_array()))


def split(q: Quaternion) -> ComplexPair:
    """Cayley-Dickson split of a scalar quaternion."""
    return ComplexPair(complex(q.r, q.i), complex(q.j, q.k))


def join(pair: ComplexPair) -> Quaternion:
    return Quaternion(pair.z1.real, pair.z1.imag, pair.z2.real, pair.z2.imag)
