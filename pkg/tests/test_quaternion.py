import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperpolar import QuaternionDomainError
from hyperpolar.quaternion import (
    I,
    J,
    K,
    ONE,
    ComplexPair,
    Quaternion,
    cayley_join,
    cayley_split,
    exp,
    inverse,
    join,
    log,
    mul,
    norm,
    qexp,
    qinverse,
    qlog,
    qmul,
    qnorm,
    split,
)

# keep squared components clear of the subnormal range
finite = st.floats(-10, 10, allow_nan=False).filter(lambda x: x == 0 or abs(x) > 1e-100)
quats = st.builds(Quaternion, finite, finite, finite, finite)


def close(p, q, tol=1e-12):
    return np.max(np.abs(p.to_array() - q.to_array())) <= tol


def test_basis_products_exact():
    assert I * J == K and J * K == I and K * I == J
    assert J * I == -K and K * J == -I and I * K == -J
    assert I * I == J * J == K * K == -ONE
    assert I * J * K == -ONE


def test_anticommutation_cyclic():
    for p, q in ((I, J), (J, K), (K, I)):
        assert mul(p, q) == -mul(q, p)


def test_elementwise_helpers():
    q = Quaternion(1, 2, 3, 4)
    assert norm(q) == pytest.approx(math.sqrt(30))
    assert q.conj() == Quaternion(1, -2, -3, -4)
    assert q.scalar == 1.0
    assert q.vector == Quaternion(0, 2, 3, 4)
    assert close(q * inverse(q), ONE)


def test_inverse_of_zero_raises():
    with pytest.raises(QuaternionDomainError):
        inverse(Quaternion(0, 0, 0, 0))


def test_exp_examples():
    assert close(exp(Quaternion(0, 0, math.pi / 2, 0)), J)
    assert exp(Quaternion(0, 0, 0, 0)) == ONE
    q = Quaternion(0.3, 0.1, -0.7, 0.2)
    assert close(exp(log(q)), q)


def test_exp_small_vector_branch_is_continuous():
    for eps in (1e-7, 1e-8, 1e-9, 1e-12):
        q = Quaternion(0.5, eps, -eps, eps)
        expected = math.exp(0.5) * np.array([math.cos(eps * math.sqrt(3)), 1, -1, 1]) * np.array([1, eps, eps, eps])
        assert np.allclose(exp(q).to_array(), expected, rtol=1e-14, atol=0)


def test_log_examples():
    assert close(log(J), Quaternion(0, 0, math.pi / 2, 0))
    assert close(log(Quaternion(math.e)), ONE)
    jk = J + K
    assert close(exp(log(jk)), jk)


@pytest.mark.parametrize("q", [Quaternion(0, 0, 0, 0), Quaternion(-2.0, 0, 0, 0)])
def test_log_domain_errors(q):
    with pytest.raises(QuaternionDomainError):
        log(q)


def test_log_error_message_names_axis():
    with pytest.raises(QuaternionDomainError, match="axis undefined"):
        log(Quaternion(-1.0))


def test_cayley_examples():
    q = Quaternion(1, 2, 3, 4)
    assert split(q) == ComplexPair(1 + 2j, 3 + 4j)
    assert join(split(q)) == q


@settings(max_examples=200, deadline=None)
@given(quats, quats)
def test_norm_multiplicative(p, q):
    assert abs(norm(p * q) - norm(p) * norm(q)) <= 1e-12 * max(norm(p) * norm(q), 1e-300) + 1e-300


@settings(max_examples=200, deadline=None)
@given(quats, quats, quats)
def test_associative(p, q, r):
    lhs, rhs = (p * q) * r, p * (q * r)
    scale = norm(p) * norm(q) * norm(r)
    assert np.max(np.abs(lhs.to_array() - rhs.to_array())) <= 1e-12 * max(scale, 1.0)


@settings(max_examples=200, deadline=None)
@given(quats)
def test_cayley_round_trip_bit_exact(q):
    z1, z2 = cayley_split(q.to_array())
    assert np.array_equal(cayley_join(z1, z2), q.to_array())


@settings(max_examples=200, deadline=None)
@given(quats.filter(lambda q: math.sqrt(q.i**2 + q.j**2 + q.k**2) > 1e-6))
def test_exp_log_round_trip(q):
    back = exp(log(q))
    assert np.max(np.abs(back.to_array() - q.to_array())) <= 1e-10 * norm(q)


def random_quats(rng, n, lo=-1, hi=1):
    return rng.uniform(lo, hi, size=(n, 4))


def test_vectorized_matches_scalar(rng):
    p, q = random_quats(rng, 50), random_quats(rng, 50)
    batch = qmul(p, q)
    for k in range(50):
        one = (Quaternion.from_array(p[k]) * Quaternion.from_array(q[k])).to_array()
        assert np.array_equal(batch[k], one)


def test_inverse_over_scales(rng):
    q = random_quats(rng, 1000)
    q *= (10 ** rng.uniform(-3, 3, size=1000) / qnorm(q))[:, None]
    prod = qmul(q, qinverse(q))
    assert np.max(np.abs(prod - np.array([1, 0, 0, 0]))) <= 1e-12


def test_log_matches_componentwise_formula(rng):
    # ln|q| + V/|V| * arccos(S/|q|), evaluated directly
    q = random_quats(rng, 200)
    v = q[:, 1:]
    vn = np.linalg.norm(v, axis=1)
    qn = np.linalg.norm(q, axis=1)
    expected = np.column_stack([np.log(qn), v / vn[:, None] * np.arccos(q[:, 0] / qn)[:, None]])
    assert np.allclose(qlog(q), expected, rtol=0, atol=1e-12)


def test_exp_matches_componentwise_formula(rng):
    q = random_quats(rng, 200, -3, 3)
    v = q[:, 1:]
    vn = np.linalg.norm(v, axis=1)
    expected = np.exp(q[:, 0])[:, None] * np.column_stack([np.cos(vn), v / vn[:, None] * np.sin(vn)[:, None]])
    assert np.allclose(qexp(q), expected, rtol=0, atol=1e-12)
