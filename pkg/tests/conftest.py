"""Shared high-precision oracles; product code never imports mpmath."""
import mpmath as mp
import numpy as np
import pytest

mp.mp.dps = 50

MP_PI = mp.pi


def mp_sinc(x):
    x = mp.mpf(x)
    return mp.mpf(1) if x == 0 else mp.sin(x) / x


def mp_coeff_A(q):
    return (MP_PI - 2) / MP_PI ** (mp.mpf(q) + 1)


def mp_coeff_B(q):
    q = mp.mpf(q)
    return 2 / (q * MP_PI ** (q + 1))


def mp_phi(kind, q, x, p=None):
    """Direct 50-digit evaluation of a family member."""
    q, x = mp.mpf(q), mp.mpf(x)
    if kind == "a_type":
        p = mp_coeff_A(q)
    elif kind == "b_type":
        p = mp_coeff_B(q)
    else:
        p = mp.mpf(p)
    return mp_sinc(x) - 2 / MP_PI - p * (MP_PI**q - (2 * x) ** q)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
