"""Brauer groups of singular del Pezzo surfaces via Pi-systems in the Picard lattice."""

from .brauer import (BrauerResult, bad_primes, brauer_group, brauer_results,
                     brauer_via_cokernel, is_locally_trivial, local_brauer,
                     nonsingular_locus_picard_torsion)
from .intlin import AbelianGroup, smith_normal_form
from .piclattice import PicLattice, make_pic_lattice
from .pisystems import (ClassifiedSystem, PiSystem, all_pisystems,
                        exhaustive_pisystems, maximal_rank_systems)
from .roots import DynkinType, all_roots
from .typeexpr import parse_type

__version__ = "0.1.0"
