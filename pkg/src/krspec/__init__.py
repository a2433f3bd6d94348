"""Min-max spectra of even functions on projective-type complexes.

A :class:`SymmetricComplex` is the quotient of a free involution, stored
with a vertex function and the GF(2) cocycle of its double cover.  The
submodules cover sublevel algebra, spectra, significance certificates,
fixture generators and the graph Cheeger constant.
"""

from .cheeger import WeightedGraph, cheeger_brute, cheeger_function_bound, median_interval, tv
from .significance import (
    SurfaceCertificate,
    SurfaceClass,
    certified_weak_significant,
    classify_surface,
    degree_obstruction,
    homology_critical_values,
    verify_surface_certificate,
)
from .spaces import GeneratorParams, gen_dyck, gen_rayleigh, gen_rp, load_scx
from .spectrum import index_of, index_spectrum, kr2_sweep
from .symcx import SubcomplexRef, SymmetricComplex, parse_scx, sublevel, validate
from .z2algebra import PersistenceDiagram, persistence

__version__ = "0.1.0"

__all__ = [
    "GeneratorParams", "PersistenceDiagram", "SubcomplexRef", "SurfaceCertificate", "SurfaceClass",
    "SymmetricComplex", "WeightedGraph", "certified_weak_significant", "cheeger_brute",
    "cheeger_function_bound", "classify_surface", "degree_obstruction", "gen_dyck", "gen_rayleigh",
    "gen_rp", "homology_critical_values", "index_of", "index_spectrum", "kr2_sweep", "load_scx",
    "median_interval", "parse_scx", "persistence", "sublevel", "tv", "validate",
    "verify_surface_certificate",
]
