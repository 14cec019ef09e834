"""Finite monoids, right acts, covers and quotients, with exhaustive theorem checks."""
from .act import (
    ActMap,
    FiniteAct,
    SubactHandle,
    act_isomorphism,
    act_map,
    all_acts,
    all_subacts,
    coproduct,
    cyclic_acts,
    enumerate_acts,
    enumerate_homs,
    example_act,
    free_act,
    indecomposable_components,
    regular_act,
    terminal_act,
    validate_act,
)
from .classes import act_in_class, injective_envelope_bounded, largest_divisible_subact
from .colimits import DirectSystem, chain_system, coequalizer, colimit, pushout, verify_universal
from .congruence import RightCongruence, all_right_congruences, generated_congruence, quotient_act
from .covers import CoverCertificate, CoverFailure, TestFamily, divisible_cover, is_cover, search_cover
from .kernels import BACKEND
from .monoid import FiniteMonoid, enumerate_monoids, find_isomorphism, monoid_property, validate_monoid
from .natacts import NatAct, eventual_image, natact, tail_into_cycle
from .quotients import act_of_quotients, quotient_monoid, splitting_map, weak_torsion_relation
from .suites import theorem_suite
from .verdict import ClassLabel, ClassVerdict
