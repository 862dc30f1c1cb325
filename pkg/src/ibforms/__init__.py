"""Exact computation of invariant bilinear forms of structure-constant
algebras over commutative rings: the universal IBF module, centroids,
canonical forms, quadratic Galois descent and multiloop algebras."""

__version__ = "0.1.0"

from .algebras import (Algebra, base_change_algebra, direct_sum, from_table,
                       mat, sl, zero_algebra, zorn)
from .domains import (QQ, ZZ, IntegersMod, Laurent, PrimeField, QuadExt,
                      Scalar, canonical_map, is_unit)
from .forms import BilinearForm
from .ibf import (check_ibf_principle, ibf_module, ibf_relations, induced_map,
                  invariant_form_space, unital_ac_isomorphism,
                  unital_projection_form)
from .linalg import Matrix, kernel_and_rank, smith_normal_form
from .modules import ModuleMap, PresentedModule, TargetModule
