"""Direct-summand regularity for finitely generated abelian groups and
finitely presented modules over valuation domains.

Descriptor-level classifiers decide, from isomorphism invariants alone,
whether a module is virtually regular (every cyclic submodule isomorphic to a
direct summand), strongly / completely virtually regular, virtually
semisimple, or virtually simple.  A separate oracle re-derives the same
verdicts on concrete finite abelian groups by exhaustive element-level
search, so every theorem-backed answer can be checked against the raw
definitions.
"""

from .abgroups import (
    FgAbGroup,
    PrimaryData,
    RegularityVerdict,
    canonicalize_factors,
    classify,
    invariant_factors_from_primary,
    is_summand_iso,
    is_torsion_semisimple,
    is_vr_p_group,
    primary_decomposition,
    torsion_split_views,
)
from .errors import (
    CapacityError,
    DomainError,
    ModregError,
    NonCanonicalChainError,
    ParseError,
)
from .intarith import PrimePowerFactorization, element_order, factorize, gcd_ext
from .oracle import (
    FiniteGroupInstance,
    Subgroup,
    all_elements,
    all_subgroups,
    cyclic_subgroup,
    full_subgroup,
    is_internal_summand,
    oracle_completely_vr,
    oracle_strongly_regular,
    oracle_strongly_vr,
    oracle_virtually_regular,
    subgroup_type,
)
from .smith import IntMatrix, SnfResult, cokernel_structure, smith_normal_form
from .valuation import (
    Opaque,
    PPower,
    ValModule,
    ValuationRingProfile,
    classify_cvr_val,
    classify_svr_val,
    classify_vr_val,
    dedekind_torsion_cvr,
    indecomposable_vr,
    render_table1,
    warfield_canonicalize,
)

__version__ = "0.1.0"
