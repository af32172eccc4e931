"""Finite fields, SL2(q), the class-2 perfect-group construction and group families."""

from .families import FAMILY_NAMES, GroupFamily, family, odd_prime, parse_family
from .fields import Fq, gf
from .perfect import (
    En,
    ModuleSplit,
    PerfectGroupBundle,
    build_En,
    build_Gn,
    build_Hn,
    check_Hn,
    comlength_inequality,
    comlength_min_n,
    split_Wn,
)
from .sl2 import check_binary_icosahedral, count_det_one, find_binary_icosahedral, sl2, subgroup_as_group
from .thmd import ThmDInstance, thmD_finite_instance
