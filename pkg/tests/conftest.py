from __future__ import annotations

import itertools

import mpmath as mp
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def mp_qnum(q, x):
    q = mp.mpf(q)
    return (1 - mp.power(q, x)) / (1 - q)


def mp_qzeta_brute(r, q, s, t, z, omega=None, levels=None):
    """High-precision partial sum of the defining multi-series; ``levels`` caps each index."""
    omega = omega or (1,) * r
    q = mp.mpf(q)
    s, t, z = mp.mpc(s), mp.mpc(t), mp.mpc(z)
    levels = levels or 120
    total = mp.mpc(0)
    for n in itertools.product(range(levels), repeat=r):
        lv = sum(a * mp.mpf(w) for a, w in zip(n, omega))
        e = sum(a * mp.mpf(w) * (t - i) for i, (a, w) in enumerate(zip(n, omega)))
        total += mp.power(q, e) * mp.power(mp_qnum(q, lv + z), -s)
    return complex(total)


@pytest.fixture(autouse=True, scope="session")
def _mp_precision():
    mp.mp.dps = 30
    yield
