"""The Cheeger constant of a weighted graph, from both sides.

Upper side: brute force over vertex subsets of cut / smaller volume.
Lower side: any function u with unit L1 norm and median 0 has tv(u) at
least that constant, and its best threshold set does at least as well.
The loop u + c, with c running from -infinity to +infinity, passes through a
function that has 0 as a median, and the extraction step finds it.
"""

from fractions import Fraction

from krspec.cheeger import (
    bridged_triangles,
    cheeger_brute,
    cheeger_function_bound,
    complete_graph,
    cycle_graph,
    indicator_minimum,
    median_interval,
    path_energy,
    path_median_extract,
    tan_loop,
    tv,
)

for name, g in [("C4", cycle_graph(4)), ("K3", complete_graph(3)), ("two bridged triangles", bridged_triangles())]:
    brute = cheeger_brute(g)
    ind = indicator_minimum(g)
    print(f"{name}: brute force {brute.value} on {brute.subset}, indicator minimum {ind.value} on {ind.subset}")

g = bridged_triangles()
u = [Fraction(x) for x in (3, 2, 1, -1, -2, -3)]
print("\nu =", [str(x) for x in u], "median interval", [str(x) for x in median_interval(g, u)])
norm = sum(m * abs(x) for m, x in zip(g.measure, u))
u = [x / norm for x in u]
bound = cheeger_function_bound(g, u)
print(f"tv(u) = {tv(g, u)}, energy {bound.energy}, rounded to {bound.rounded_subset} with ratio {bound.rounded_ratio}")

path = tan_loop(g, u, samples=6)
energies = path_energy(g, path)
print(f"loop of {len(path)} functions, largest energy {max(energies)} <= tv(u) = {tv(g, u)}")
found = path_median_extract(g, path)
print(f"0 is a median at step {found.index} (offset {path.offsets[found.index]}): {found.is_median}")
