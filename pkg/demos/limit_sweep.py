"""Watch the q-side approach the classical Barnes zeta value as q -> 1."""

from __future__ import annotations

from qbarnes.limits import SweepSpec, limit_sweep


def show(spec: SweepSpec) -> None:
    rep = limit_sweep(spec)
    print(f"r={spec.r} nu={spec.nu} s={spec.s} t={spec.t}: target {rep.target:.12g}")
    for row in rep.rows:
        gap = "pole" if row.gap is None else f"{row.gap:.3e}"
        print(f"  q={row.q:.8f}  gap {gap}")
    slope = "n/a" if rep.slope is None else f"{rep.slope:.3f}"
    print(f"  -> {rep.classification} (log-gap slope {slope})\n")


if __name__ == "__main__":
    show(SweepSpec(r=2, s=3.5, nu=1))
    show(SweepSpec(r=1, s=-0.5, nu=1))
    # off the admissible rules the gap grows like (1-q)^(s-1)
    show(SweepSpec(r=1, s=0.25, rule=(2, -1)))
