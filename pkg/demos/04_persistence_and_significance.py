"""Three grades of evidence on a random function over RP^2.

``candidate`` levels are where sublevel homology changes at all.
``certified`` levels are where the image of sublevel homology in the whole
space grows; no deformation of a sublevel into a lower one can exist across
such a level.  On RP^1 and RP^2 every certified level is also an index-sweep
value, which the last lines check.
"""

import random
from fractions import Fraction

from krspec.significance import certified_weak_significant, homology_critical_values
from krspec.spaces import gen_rp
from krspec.spectrum import index_spectrum, kr2_sweep
from krspec.symcx import format_value as fmt
from krspec.z2algebra import persistence

rng = random.Random(2024)
base = gen_rp(2)
c = base.with_values({v: Fraction(rng.randint(0, 40), 4) for v in base.values})
print("vertex values:", {v: fmt(x) for v, x in c.values.items()})

d = persistence(c)
print("bars (dim birth death):")
print(d.export(), end="")
print("candidates:", [fmt(t) for t in homology_critical_values(d)])
certified = certified_weak_significant(d)
print("certified:", [(x.dimension, fmt(x.level), x.multiplicity) for x in certified])

report = index_spectrum(c)
print("index sweep:", [fmt(v) for v in report.index_values])
loop = kr2_sweep(c)
print(f"first odd loop at {fmt(loop.value)}: {list(loop.witness)}")
print("every certified level is an index value:",
      all(x.level in report.index_values for x in certified))
