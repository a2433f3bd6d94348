"""A level that neither homology nor the index can see.

RP^3 is modelled as a box whose boundary points are glued to their
antipodes.  Inside sits Dyck's surface (an equatorial RP^2 with a handle
attached).  The vertex function is 0 on the surface, r on the rest of the
equatorial plane and R everywhere else.  The index sweep reports
(0, 0, 0, R) and no essential homology appears strictly between 0 and R.
Still, level r is significant: the equatorial RP^2 enters there and cannot
be pushed into the surface, since a mod-2 degree-one map from a genus-1
non-orientable surface onto a genus-3 one does not exist.
"""

from krspec.significance import (
    certificate_for,
    certified_weak_significant,
    classify_surface,
    homology_critical_values,
    obstruction_between,
    verify_surface_certificate,
)
from krspec.spaces import gen_dyck
from krspec.spectrum import index_of, index_spectrum
from krspec.z2algebra import persistence

fx = gen_dyck()
c = fx.complex
print(f"complex: {c!r}")
print(f"r level {fx.r_level}, max {fx.f_max}")
print("index sweep:", [str(v) for v in index_spectrum(c).index_values])

print("Dyck witness:", classify_surface(fx.dyck_witness), "| index", index_of(fx.dyck_witness))
print("RP^2 witness:", classify_surface(fx.rp2_witness))

d = persistence(c)
print("homology changes at", [str(t) for t in homology_critical_values(d)])
print("essential-rank jumps", [(x.dimension, str(x.level)) for x in certified_weak_significant(d)])

lower = certificate_for(fx.dyck_witness, level=0)
upper = certificate_for(fx.rp2_witness, level=fx.r_level)
for line in verify_surface_certificate(c, upper).lines():
    print("  ", line)
for line in obstruction_between(c, lower, upper).lines():
    print("  ", line)

too_low = certificate_for(fx.rp2_witness, level=fx.r_level / 2)
print("at level r/2 the RP^2 witness is contained:", verify_surface_certificate(c, too_low).containment)
