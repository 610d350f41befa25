"""Probe orbit behaviour: agreement statistics, proximality, periodicity.

Points are finite truncations; every statistic is an exact fraction and
every conclusion is explicitly horizon-bounded.
"""

from spacelab import (
    build_pset,
    f_statistic,
    make_point,
    named_points,
    periodic_point_check,
    proximal_probe,
)
from spacelab.psets import Complement, Multiples

HORIZON = 256

odds = build_pset(Complement(of=Multiples(k=2)), HORIZON)
points = named_points(odds, HORIZON, maxones_n=8)
print("named points over the odd-difference system:")
for p in points:
    print(f"  {p.label}: starts {p.config.word()[:24]}...")

x, y = points[0], points[1]
report = f_statistic(x, y, 0, [16, 64, 128, 256])
print(f"\nagreement frequency of {x.label} vs {y.label}:")
for n, value in report.values:
    print(f"  F_{n} = {value} ~ {float(value):.4f}")
print(f"  tail minimum: {report.tail_min}")

print("\nshifted-agreement probes (least shift with a clean block):")
for block in (4, 16, 32):
    m = proximal_probe(x, y, block)
    print(f"  block {block}: m = {m}")

# periodic points exist exactly when the period's multiples all belong
print("\nperiodic points:")
for k in range(1, 7):
    m_view = build_pset(Multiples(k=2), 64)
    result = periodic_point_check(m_view, k, 64)
    status = ("exists" if result.point is not None
              else f"fails at multiple {result.failing_multiple}")
    print(f"  evens, period {k}: {status}")

# a deliberately rigid system: the only surviving points are sparse
threes = build_pset(Multiples(k=3), 60)
p = make_point(threes, "periodic:3", 60)
print(f"\nperiod-3 point in multiples of 3: {p.config.word()[:30]}...")
