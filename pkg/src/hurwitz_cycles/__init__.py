"""Rational double Hurwitz cycles: classical polynomial cycles, tropical cycles, wall crossing."""

from .classical import (
    CycleClass,
    WallCrossingClass,
    double_hurwitz_number,
    hurwitz_cycle,
    wall_crossing_direct,
    wall_crossing_formula,
)
from .errors import (
    HurwitzError,
    InvalidInputError,
    NonAdjacentChambersError,
    OnWallError,
    ResourceGuardError,
    VerificationError,
)
from .fan import FanCycle, ModuliFan, build_moduli_fan, psi_product
from .oracle import oracle_count
from .polynomial import IntPolynomial, LinearForm
from .trees import Chamber, LabeledTree, RamificationVector, balance, chamber_of, enumerate_trees, walls
from .tropical import BranchPoints, TropicalCell, TropicalHurwitzCycle, build_tropical_cycle, check_balancing
from .wallcross import tropical_wall_crossing

__version__ = "0.1.0"

__all__ = [
    "BranchPoints",
    "Chamber",
    "CycleClass",
    "FanCycle",
    "HurwitzError",
    "IntPolynomial",
    "InvalidInputError",
    "LabeledTree",
    "LinearForm",
    "ModuliFan",
    "NonAdjacentChambersError",
    "OnWallError",
    "RamificationVector",
    "ResourceGuardError",
    "TropicalCell",
    "TropicalHurwitzCycle",
    "VerificationError",
    "WallCrossingClass",
    "balance",
    "build_moduli_fan",
    "build_tropical_cycle",
    "chamber_of",
    "check_balancing",
    "double_hurwitz_number",
    "enumerate_trees",
    "hurwitz_cycle",
    "oracle_count",
    "psi_product",
    "tropical_wall_crossing",
    "wall_crossing_direct",
    "wall_crossing_formula",
    "walls",
]
