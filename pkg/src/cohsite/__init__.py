"""Finite coherent sites: lattices and Stone duality, localization, spectra, weak schemes and module sheaves."""
from .algebra import FiniteAlgebra, Hom, MonomialAlgebra, localize, zmod
from .errors import CohsiteError, DocumentError, SizeGuardError
from .lattice import CoherentSpace, DistLattice, pt, stone_roundtrip
from .scheme import counit_check, glue, is_affine, spec_scheme
from .site import covers, descent_check
from .spectrum import omega1, spec0

__version__ = "0.1.0"

__all__ = [
    "CoherentSpace", "CohsiteError", "DistLattice", "DocumentError", "FiniteAlgebra", "Hom", "MonomialAlgebra",
    "SizeGuardError", "counit_check", "covers", "descent_check", "glue", "is_affine", "localize", "omega1", "pt",
    "spec0", "spec_scheme", "stone_roundtrip", "zmod",
]
