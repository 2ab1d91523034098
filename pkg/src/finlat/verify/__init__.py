"""Self-verification: property suite, fault injection, and worked scenarios."""

from .mutations import MUTATIONS, apply_mutation
from .properties import (
    PROPERTIES,
    PROPERTY_ORDER,
    SuiteConfig,
    replay_witness,
    run_suite,
)
from .report import PropertyResult, SuiteReport
from .scenarios import GridReport, InteroReport, grid_scenario, intero_scenario
from .swsweep import FamilySweepReport, family_representatives, run_family_sweep

__all__ = [
    "MUTATIONS",
    "apply_mutation",
    "PROPERTIES",
    "PROPERTY_ORDER",
    "SuiteConfig",
    "replay_witness",
    "run_suite",
    "PropertyResult",
    "SuiteReport",
    "GridReport",
    "InteroReport",
    "grid_scenario",
    "intero_scenario",
    "FamilySweepReport",
    "family_representatives",
    "run_family_sweep",
]
