"""Exact certificates for weight-one variations of Hodge structure over
Shimura varieties: slopes, Arakelov equality, length bounds, HN filtrations
and the representation catalogue behind them."""

__version__ = "0.1.0"

from .chow_calculus import ChernVector, FactorProfile, SheafClass, component_slope, slope
from .errors import (
    DataMissingError,
    InvalidInputError,
    KugaCertError,
    LatticeDiagnostic,
    NotApplicableError,
    PreconditionError,
)
from .filtration_engine import SubobjectLattice, epsilon0, hn_filtration, weak_jh
from .higgs_model import HiggsData, HodgePiece, arakelov_defect, certify, length_bound

__all__ = [
    "ChernVector",
    "DataMissingError",
    "FactorProfile",
    "HiggsData",
    "HodgePiece",
    "InvalidInputError",
    "KugaCertError",
    "LatticeDiagnostic",
    "NotApplicableError",
    "PreconditionError",
    "SheafClass",
    "SubobjectLattice",
    "arakelov_defect",
    "certify",
    "component_slope",
    "epsilon0",
    "hn_filtration",
    "length_bound",
    "slope",
    "weak_jh",
]
