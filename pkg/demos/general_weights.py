"""Evidence tables for weights other than (1, ..., 1); no verdict is drawn."""

from __future__ import annotations

import math

from qbarnes.limits import conjecture_probe

if __name__ == "__main__":
    for omega in ((1.0, math.sqrt(2)), (1.0, 2.0)):
        for rep in conjecture_probe(2, omega, 1, [4.0, -0.5]):
            print(f"omega={omega} s={rep.s.real:g} mode={rep.mode} trend={rep.trend}")
            for q, g in zip(rep.qs[-len(rep.gaps):], rep.gaps):
                print(f"  q={q:.8f}  {'-' if g is None else f'{g:.3e}'}")
