"""Iterated wreath products: cycle types, realizability, full cycles."""

from arbordyn.wreath.cycletype import CycleType
from arbordyn.wreath.groups import (
    AGL1,
    Cyclic,
    Explicit,
    Group,
    Holomorph,
    Symmetric,
    agl1_types,
    group_cycle_index,
    holomorph_full_cycles,
    parse_group,
    partitions,
)
from arbordyn.wreath.tower import (
    CATALOG,
    Tower,
    TypeTree,
    brute_force_tower,
    catalog_towers,
    full_cycle_proportion,
    obstruction_all_towers,
    ordered_prime_factorizations,
    parity_necessary,
    realizable_in_tower,
    wreath_order,
)

__all__ = [
    "AGL1", "CATALOG", "CycleType", "Cyclic", "Explicit", "Group", "Holomorph", "Symmetric",
    "Tower", "TypeTree", "agl1_types", "brute_force_tower", "catalog_towers",
    "full_cycle_proportion", "group_cycle_index", "holomorph_full_cycles",
    "obstruction_all_towers", "ordered_prime_factorizations", "parity_necessary",
    "parse_group", "partitions", "realizable_in_tower", "wreath_order",
]
