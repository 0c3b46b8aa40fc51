"""Exact-arithmetic calculus for compatible pre-Lie algebras.

Structure-constant algebras over the rationals, the graded bracket and its
cochain complexes, cohomology groups, deformation theory with a constructive
rigidity probe, and abelian extensions classified by degree-2 cohomology.
"""

from .algebras import (BilinearProduct, CompatibleLie, CompatiblePreLie,
                       CompatibleRep, RepMaps, induced_lie_rep, pencil,
                       regular_rep, semidirect, sub_adjacent,
                       validate_compatible, validate_pre_lie, validate_rep)
from .cochain import Cochain, Unshuffle, mn_bracket, mn_compose, unshuffles
from .cohomology import (CochainTuple, CohomologyReport, ComplexContext,
                         bidegree, cohomology_group, delta_single,
                         delta_total, lift, partial_single, partial_total)
from .deformation import (FormalDeformation, InfinitesimalDeformation,
                          NijenhuisOp, deformed_structure, equivalence_check,
                          formal_check, infinitesimal_check, nijenhuis_check,
                          rigidity_probe, trivial_from_nijenhuis)
from .extension import (AbelianExtension, SectionData, TwoCocyclePair,
                        build_extension, build_isomorphism, classify,
                        cohomologous_check, extract_from_section)
from .linalg import ExactMatrix, kernel_basis, rank, solve

__all__ = [name for name in dir() if not name.startswith("_")]
