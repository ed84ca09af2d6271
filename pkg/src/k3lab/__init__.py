"""k3lab: Milnor K-groups, Bloch groups and torus homology cycles over
small fields, computed with exact integer linear algebra.

Finite fields are a definitional playground here: the classical theorems
this machinery comes from concern infinite fields, and nothing in this
package claims otherwise.  Every report emitted by the CLI repeats that
disclaimer.
"""

__version__ = "0.1.0"

DISCLAIMER = ("definitional extension: definitions instantiated over finite "
              "fields and S-unit-truncated Q; no infinite-field theorem is "
              "claimed")

from .intlin import (IntMatrix, SparseIntMatrix, SNFResult, MembershipVerdict,
                     ResourceLimitError, snf, hnf, in_image, lattice_equal)
from .fields import (FiniteFieldModel, FieldElem, FactoredRational, SUnitModel,
                     ff_make, one_minus, dlog, qstar_factor, parse_field_spec)
from .abpres import AbPres, AbElem, AbMap, tensor, sigma_quotient, subgroup_compare
from .barhom import (GroupTable, BarChain, CycleClass, GroupHom, bar_boundary,
                     c_cycle, shuffle_cup, torus_class, map_chain, homology_groups)
from .homsolve import HomologyVerdict, homologous
