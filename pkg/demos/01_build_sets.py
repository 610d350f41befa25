"""Build a few difference sets and look at their exact densities.

Every set description is a small composable value; a view pins it to a
finite horizon so that everything downstream is exact arithmetic.
"""

from fractions import Fraction

from spacelab import build_pset, density_report, elements
from spacelab.psets import (
    Bohr,
    Complement,
    DiffSet,
    FiniteSums,
    Intersect,
    Multiples,
    Squares,
    Union,
)

HORIZON = 64

catalog = [
    ("evens", Multiples(k=2)),
    ("odds", Complement(of=Multiples(k=2))),
    ("squares", Squares()),
    ("subset sums of {2,5}", FiniteSums(gens=(2, 5))),
    ("differences of squares", DiffSet(base=(1, 4, 9, 16, 25))),
    ("evens or threes", Union(parts=(Multiples(k=2), Multiples(k=3)))),
    ("coprime to 6", Intersect(parts=(Complement(of=Multiples(k=2)),
                                      Complement(of=Multiples(k=3))))),
    ("golden rotation window", Bohr(alpha=0.61803398875,
                                    interval=(0.0, 0.25))),
]

for name, spec in catalog:
    view = build_pset(spec, HORIZON)
    elems = elements(view)
    head = ", ".join(str(e) for e in elems[:10])
    if len(elems) > 10:
        head += ", ..."
    print(f"{name}: {{{head}}}")

    report = density_report(view, [8, 16, 32])
    final_n, final_d = report.prefix_densities[-1]
    print(f"  prefix density at n={final_n}: {final_d}")
    print(f"  window maxima: " + ", ".join(
        f"W={w}: {d}" for w, d in report.banach_profile))
    print(f"  tail estimates: lower {report.lower_est}, "
          f"upper {report.upper_est}")
    print()

# the squares thin out; watch the best-window density fall as the
# window widens (short windows near the origin stay deceptively rich)
view = build_pset(Squares(), 2000)
report = density_report(view, [25, 100, 400, 1600], n0=1000)
for w, d in report.banach_profile:
    print(f"squares: best {w}-window density {d} ~ {float(d):.3f}")
