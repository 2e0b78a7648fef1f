"""Loxodromes on twisted surfaces in Lorentz-Minkowski 3-space."""
from .errors import (CausalMismatch, DegenerateDenominator, DegenerateSpan,
                     DomainError, InvalidCase, LightlikeInput, LightlikeTangent,
                     ProfileSyntaxError, TwistloxError, UnknownFunction,
                     UnknownIdentifier, UnsupportedCase)
from .estimator import LoxodromeTracer
from .loxodrome import (LoxodromeSpec, b0_factor, check_b0_admissible, select_AB,
                        slope_b0, slope_case, slope_general)
from .mink import (AngleCase, CausalClass, MVec3, causal_classify, lorentzian_angle,
                   lorentzian_norm, minkowski_dot)
from .profile import (ProfileExpr, differentiate_profile, eval_profile, parse_profile,
                      substitute)
from .solver import (CurveTrace, IntegrationConfig, Termination, angle_deviation,
                     arc_length, integrate_loxodrome)
from .surfaces import (CausalFlags, Family, FirstForm, TwistedSurface, causal_flags,
                       embed_point, first_form, partials)

__version__ = "0.1.0"

__all__ = [
    "AngleCase", "CausalClass", "CausalFlags", "CausalMismatch", "CurveTrace",
    "DegenerateDenominator", "DegenerateSpan", "DomainError", "Family", "FirstForm",
    "IntegrationConfig", "InvalidCase", "LightlikeInput", "LightlikeTangent",
    "LoxodromeSpec", "LoxodromeTracer", "MVec3", "ProfileExpr", "ProfileSyntaxError",
    "Termination", "TwistedSurface", "TwistloxError", "UnknownFunction",
    "UnknownIdentifier", "UnsupportedCase", "angle_deviation", "arc_length",
    "b0_factor", "causal_classify", "causal_flags", "check_b0_admissible",
    "differentiate_profile", "embed_point", "eval_profile", "first_form",
    "integrate_loxodrome", "lorentzian_angle", "lorentzian_norm", "minkowski_dot",
    "parse_profile", "partials", "select_AB", "slope_b0", "slope_case",
    "slope_general", "substitute",
]
