"""Zeta, Hurwitz, Lerch and Dirichlet L-functions to arbitrary precision.

Each function is a finite main sum plus a line integral through a saddle
point, discretised by a sinh-mapped trapezoid rule with pole corrections.
"""
from .dirichlet import (DirichletCharacter, all_characters, analyze_character, dirichlet_l,
                        l_hurwitz, l_siegel, load_character)
from .errors import (BudgetExceeded, CharacterError, DomainError, MDEError, PoleError,
                     PrecisionError)
from .lerch import LerchParams, hurwitz, lerch
from .mdequad import EvalResult, QuadOverrides, QuadPlan, Rule
from .numkern import EvalContext, parse_complex
from .zeta_rs import zeta

__all__ = [
    "BudgetExceeded", "CharacterError", "DirichletCharacter", "DomainError", "EvalContext",
    "EvalResult", "LerchParams", "MDEError", "PoleError", "PrecisionError", "QuadOverrides",
    "QuadPlan", "Rule", "all_characters", "analyze_character", "dirichlet_l", "hurwitz",
    "l_hurwitz", "l_siegel", "lerch", "load_character", "parse_complex", "zeta",
]
