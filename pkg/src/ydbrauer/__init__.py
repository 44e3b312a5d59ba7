"""Exact verification of (α, β)-Yetter-Drinfeld constructions over finite-dimensional Hopf algebras."""

from .exact_linalg import FieldSpec, LinearMap, Matrix, invert, rank
from .hopf_core import (AutPair, Character, GroupLikeElement, HopfAlgebra, HopfAutomorphism,
                        cyclic_group_algebra, group_algebra, sweedler, taft, verify_hopf)
from .yd_modules import (YDModule, YDMorphism, build_fVg, build_h_alpha_beta, check_pair_in_involution,
                         check_yd, conjugate_twist, prime, shift, trivial_module, verify_morphism)
from .monoidal_ops import braiding, dual, psi, tensor
from .yd_algebras import (AlgebraMorphism, YDAlgebra, opposite, smash, trivial_algebra, twist_algebra,
                          verify_yd_algebra)
from .endo_azumaya import (azumaya_maps, brauer_trivial_forward, coco_check, end_algebra,
                           end_op_algebra, iota, is_h_azumaya, p4_check, p5_iso, phi,
                           quasi_elementary_witness, tau)

__version__ = "0.1.0"
