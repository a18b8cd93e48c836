"""Exact graded commutative algebra with Matlis duality.

Noetherian modules are cokernels of homogeneous matrices over
``k[x_1..x_n]/I``; artinian modules are carried as Matlis duals of them.
"""

from .field import GF, QQ, Field, parse_field
from .rings import Ideal, QuotientRing, polynomial_ring
from .modules import GradedModule, ScopeError
from .flm import FiniteLengthModule
from .duality import ArtinianModule, StageSequence, artinian_dual
from .homology import ext_tor_fg, hom_tensor_fg, min_resolution, betti_bass_numbers
from .invariants import ass_fg, att_artinian, depth_width
from .dsl import DSLError, Session, run_script

__version__ = "0.1.0"

__all__ = [
    "GF", "QQ", "Field", "parse_field", "Ideal", "QuotientRing", "polynomial_ring",
    "GradedModule", "ScopeError", "FiniteLengthModule", "ArtinianModule", "StageSequence",
    "artinian_dual", "ext_tor_fg", "hom_tensor_fg", "min_resolution", "betti_bass_numbers",
    "ass_fg", "att_artinian", "depth_width", "DSLError", "Session", "run_script",
]
