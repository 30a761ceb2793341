"""Gamma~_q against the classical gamma function, and gamma_q(1) against Euler's constant."""

from __future__ import annotations

from scipy.special import gamma

from qbarnes.qgamma import gamma_q_euler, qgamma

EULER = 0.5772156649015329

if __name__ == "__main__":
    for z in (0.5, 1.5, 2.5):
        print(f"z = {z}  Gamma(z) = {gamma(z):.12g}")
        for k in range(1, 5):
            q = 1 - 10.0**-k
            v = qgamma(q, z).real
            print(f"  q = {q:<8}  Gamma~_q = {v:.12g}  gap {abs(v - gamma(z)):.2e}")
    print()
    for k in range(1, 5):
        q = 1 - 10.0**-k
        g = gamma_q_euler(q, 1).real
        print(f"q = {q:<8}  gamma_q(1) = {g:.12g}  gap {abs(g - EULER):.2e}")
