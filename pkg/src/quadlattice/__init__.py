"""Lattice of conductor-primary ideals of quadratic orders with prime conductor.

Exact integer arithmetic throughout: quadratic integers, HNF ideal algebra,
splitting classification, closed-form lattice construction and an independent
brute-force enumeration oracle.
"""

from .core import (
    OmegaKind,
    OrderContext,
    QuadInt,
    UnitGroupData,
    UnitKind,
    make_context,
    unit_group,
)
from .errors import (
    BudgetExceeded,
    IsFO,
    IterationCapExceeded,
    NotBasicElement,
    NotNested,
    NotPrimary,
    NotPrime,
    NotSquareFree,
    QuadLatticeError,
    RingMismatch,
    ZeroIdeal,
)
from .ideals import (
    IdealRep,
    Ring,
    basic_component,
    conjugate_ideal,
    contains,
    contains_element,
    equals,
    extend_to_D,
    ideal_from_generators,
    ideal_norm,
    index_in_extension,
    is_basic,
    is_D_module,
    is_F_primary,
    is_invertible,
    is_primitive,
    is_principal_D,
    is_principal_O,
    min_power_contained,
    power,
    primitive_form,
    product,
    scale,
)
from .lattice import (
    LatticeGraph,
    LatticeNode,
    basic_layer,
    hasse,
    intermediates,
    layer_n,
    principal_basic_ideals,
    principal_chain,
)
from .oracle import (
    VerificationReport,
    enumerate_between,
    enumerate_primary,
    verify_free_action,
    verify_theorems,
)
from .splitting import (
    SplitData,
    SplittingType,
    class_order_and_generator,
    conductor,
    conductor_factorization,
    prime_above,
    split_data,
    splitting_type,
)

__version__ = "0.1.0"
