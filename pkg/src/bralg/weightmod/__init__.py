"""Weight modules over BR algebras supported on a single orbit."""

from .builders import (
    HypothesisViolated,
    InfiniteSimple,
    ThetaModule,
    ThetaRequired,
    build_custom,
    build_finite_simples,
    build_infinite_simples,
    interval_module,
    theta_isomorphic,
    theta_module,
)
from .fileformat import parse_module, read_module, write_module
from .module import (
    Failure,
    NotHomogeneous,
    NotInComponent,
    OutsideWindow,
    VerificationFailed,
    VerifyReport,
    WeightModule,
    WeightVector,
    act,
    break_character,
    verify,
)
from .simplicity import InfiniteSupport, SimplicityVerdict, closure, is_simple

__all__ = [
    "Failure",
    "HypothesisViolated",
    "InfiniteSimple",
    "InfiniteSupport",
    "NotHomogeneous",
    "NotInComponent",
    "OutsideWindow",
    "SimplicityVerdict",
    "ThetaModule",
    "ThetaRequired",
    "VerificationFailed",
    "VerifyReport",
    "WeightModule",
    "WeightVector",
    "act",
    "break_character",
    "build_custom",
    "build_finite_simples",
    "build_infinite_simples",
    "closure",
    "interval_module",
    "is_simple",
    "parse_module",
    "read_module",
    "theta_isomorphic",
    "theta_module",
    "verify",
    "write_module",
]
