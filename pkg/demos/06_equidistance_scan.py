"""Locate the mixing weight at which both families are equally distant
from the mixture.

The gap between the two fitted population distances is scanned over the
mixing weight and then bisected to its root.  At the population level every
cell of a proper mixture carries mass, so the empty-cell penalty is inert
and the root does not depend on h.
"""

import numpy as np

from phdsel import (default_partition, equidistance_gap, equidistance_pi,
                    geometric_model, poisson_model)

part = default_partition()
pois, geom = poisson_model(part), geometric_model(part)

print("gap d(Pois) - d(Geom) over the mixing weight:")
for pi in np.linspace(0.0, 1.0, 11):
    gap = equidistance_gap(pi, pois, geom, part, h=0.5)
    bar = "+" if gap > 0 else "-"
    print(f"  pi = {pi:.1f}: {gap:+.5f} {bar * min(int(abs(gap) * 200), 40)}")

for h in (0.5, 1.0):
    result = equidistance_pi(pois, geom, part, h)
    print(f"\nequidistance weight at h={h:g}: pi* = {result.pi_star:.4f}")
