"""Instance generators and hypothesis/conclusion checkers for the sublattice lemmas."""

from .basic import (
    act,
    check_basic_lemma,
    check_images_lemma,
    check_preliminary_three,
    check_saturated_embedding,
    congruent,
    image_of_full,
    power,
)
from .campaign import (
    KINDS,
    CampaignConfig,
    CampaignResult,
    check_instance,
    generate_instance,
    load_instance,
    run_campaign,
)
from .four_degenerations import (
    FourDegenInstance,
    build_instance,
    canonical_configuration,
    check_four_degenerations,
)
from .marcucci import MarcucciInstance, check_marcucci, marcucci_counterexample
from .preliminary import PreliminaryThreeInstance
from .report import Report
from .unimodular_m import DualityWitness, UnimodularMInstance, check_unimodular_m, distinguished_sublattices

__all__ = [
    "KINDS",
    "CampaignConfig",
    "CampaignResult",
    "DualityWitness",
    "FourDegenInstance",
    "MarcucciInstance",
    "PreliminaryThreeInstance",
    "Report",
    "UnimodularMInstance",
    "act",
    "build_instance",
    "canonical_configuration",
    "check_basic_lemma",
    "check_four_degenerations",
    "check_images_lemma",
    "check_instance",
    "check_marcucci",
    "check_preliminary_three",
    "check_saturated_embedding",
    "check_unimodular_m",
    "congruent",
    "distinguished_sublattices",
    "generate_instance",
    "image_of_full",
    "load_instance",
    "marcucci_counterexample",
    "power",
    "run_campaign",
]
