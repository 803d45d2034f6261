# %% [markdown]
# # Quaternion basics
#
# Quaternions are stored as arrays whose last axis holds `(r, i, j, k)`.
# The scalar `Quaternion` class wraps the same functions for interactive use.

# %%
import numpy as np

from hyperpolar.quaternion import I, J, K, Quaternion, cayley_join, cayley_split, exp, log, qexp, qmul

print("i*j =", I * J, "  j*i =", J * I)
print("i*j*k =", I * J * K)

# %% [markdown]
# Multiplication does not commute, but the norm is multiplicative.

# %%
p = Quaternion(0.3, 0.1, -0.7, 0.2)
q = Quaternion(1.0, -2.0, 0.5, 0.25)
print("p*q =", p * q)
print("q*p =", q * p)
print("|p*q| - |p||q| =", (p * q).norm() - p.norm() * q.norm())

# %% [markdown]
# `exp` and `log` use the polar form `|q| exp(u theta)` with a unit pure
# axis `u`.  A rotation by `pi/2` about `j` lands on `j` itself.

# %%
print("exp(pi/2 j) =", exp(Quaternion(0, 0, np.pi / 2, 0)))
print("log(j)      =", log(J))
print("exp(log(p)) =", exp(log(p)), " vs p =", p)

# %% [markdown]
# The Cayley-Dickson form writes `q = z1 + z2 j` with two complex numbers.
# Signals in this package are built from that split: `z1` is the observed
# complex signal and `z2` its quaternionic Hilbert transform.

# %%
z1, z2 = cayley_split(p.to_array())
print("z1 =", z1, " z2 =", z2)
print("join back:", cayley_join(z1, z2))

# %% [markdown]
# Everything is vectorized over leading axes, so a whole carrier
# `exp(B j)` for a sampled phase is one call.

# %%
t = np.linspace(0, 0.1, 6)
B = 40 * np.pi * t
pure = np.zeros((t.size, 4))
pure[:, 2] = B
carrier = qexp(pure)
print(np.round(carrier, 4))
print("unit norm:", np.allclose(np.linalg.norm(qmul(carrier, carrier), axis=1), 1.0))
