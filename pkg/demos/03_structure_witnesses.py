"""Hunt for finite combinatorial certificates inside difference sets.

Each search returns either a concrete witness that re-verifies by
direct arithmetic, or None for "not within this bound", which proves
nothing beyond it.
"""

import json

from spacelab import (
    build_pset,
    check_bohr_avoidance,
    find_delta_chain,
    find_ip_generator,
    find_ip_ip_generator,
    finite_sums,
    intersective_refute,
    syndetic_gap,
    thick_run,
)
from spacelab.psets import Explicit, Multiples, Squares

squares = build_pset(Squares(), 100)
chain = find_delta_chain(squares, 3, 100)
print("depth-3 chain with square differences:", chain.payload)
print("  as JSON:", json.dumps(chain.to_json(), sort_keys=True))

evens = build_pset(Multiples(k=2), 10)
gen = find_ip_generator(evens, 2, 10)
print("IP generator in the evens:", gen.payload,
      "with subset sums", finite_sums(gen.payload))

threes = build_pset(Multiples(k=3), 30)
gen2 = find_ip_ip_generator(threes, 2, 30)
print("IP-IP generator in multiples of 3:", gen2.payload)

# the squares contain whole IP sets: {9, 16, 25} is one
big_squares = build_pset(Squares(), 10000)
gen3 = find_ip_generator(big_squares, 2, 10000)
print("IP generator inside the squares:", gen3.payload,
      "sums", finite_sums(gen3.payload))

# gap structure: squares leave long interior gaps, multiples stay tight
for name, view in (("squares", build_pset(Squares(), 100)),
                   ("multiples of 3", build_pset(Multiples(k=3), 100))):
    report = syndetic_gap(view)
    print(f"{name}: largest interior gap {report.interior_gap}, "
          f"censored tail {report.censored_tail}, "
          f"longest run {thick_run(view)}")

# does an even number appear among differences of the first squares?
e = build_pset(Multiples(k=2), 50)
a = build_pset(Explicit(elems=(1, 4, 9, 16, 25, 36, 49)), 50)
hit = intersective_refute(e, a)
print(f"even difference of squares: {hit.payload} = "
      f"{hit.pair[1]} - {hit.pair[0]}")

# rotation window membership: does P catch every Bohr-set element?
report = check_bohr_avoidance(build_pset(Multiples(k=3), 64),
                              0.61803398875, (0.0, 0.25))
print(f"multiples of 3 vs golden-rotation window: "
      f"{report.in_p} of {report.bohr_size} caught, "
      f"first miss {report.least_missing}")
