"""Heredity and maximality of crossed product orders from residue data."""

__version__ = "0.1.0"

from .cocycles import TwoCocycle, cyclic_cocycle, bimultiplicative_cocycle, trivial_cocycle, pi_map
from .crossedalg import CrossedProduct, center, center_decomposition, iota_idempotents
from .exactfields import extension_field, prime_field, rational_function_field
from .groupkit import FiniteGroup, Subgroup, cyclic_group, klein_four, symmetric_group
from .ramification import RamifiedScenario, analyze, validate_scenario
from .reduction import GlobalScenario, decomposition_group, reduce_to_local

__all__ = [
    "__version__",
    "TwoCocycle", "cyclic_cocycle", "bimultiplicative_cocycle", "trivial_cocycle", "pi_map",
    "CrossedProduct", "center", "center_decomposition", "iota_idempotents",
    "prime_field", "extension_field", "rational_function_field",
    "FiniteGroup", "Subgroup", "cyclic_group", "klein_four", "symmetric_group",
    "RamifiedScenario", "analyze", "validate_scenario",
    "GlobalScenario", "decomposition_group", "reduce_to_local",
]
