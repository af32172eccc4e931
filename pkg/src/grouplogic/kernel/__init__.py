"""Finite group representations, constructors and elementary subgroup computations."""

from .build import (
    alternating,
    cyclic,
    dihedral,
    dihedral_of_cyclic,
    direct_power,
    direct_product,
    elementary_abelian,
    find_isomorphism,
    format_cycles,
    from_permutations,
    inner_automorphism,
    is_isomorphic,
    parse_cycles,
    quotient,
    semidirect_product,
    symmetric,
    verify_automorphism,
    verify_homomorphism,
    wreath_cyclic,
)
from .group import FiniteGroup, GroupMap, Subset, from_table, structural_group
from .subgroups import (
    as_subgroup,
    center,
    centralizer,
    class_representatives,
    closure,
    commutator,
    commutator_subgroup,
    conjugacy_class,
    conjugacy_classes,
    conjugate,
    derived_subgroup,
    element_order,
    element_orders,
    index,
    intersection,
    is_normal,
    join,
    normal_closure,
    normalizer,
    product_order,
    product_set,
    trivial_subgroup,
    whole_group,
)
