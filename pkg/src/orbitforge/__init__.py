"""orbitforge: exact arithmetic for orbits of split odd orthogonal groups.

Subpackages cover scalar arithmetic, exact polynomial and matrix algebra,
etale algebras with involution, quadratic form classification, orbit
construction and identification, elliptic descent maps, finite and real
orbit counting, integral lattice checks, and binary quadratic forms.
"""

__version__ = "0.1.0"
