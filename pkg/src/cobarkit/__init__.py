"""Cobar complexes over the dual Steenrod algebra and the Adams E2-term for MSU."""

__version__ = "0.1.0"

from .fp import NotPrimeError, binom_mod_p, check_prime  # noqa: E402
from .steenrod import SteenrodElement, adem_normalize, admissible_basis  # noqa: E402
from .dual import DualElement, antipode, coproduct  # noqa: E402
from .comodules import ComodulePoly, coaction_msu, splitting_G, verify_G_iso  # noqa: E402
from .cobar import CobarComplex, CobarElement, ResourceLimitError, class_Q, cotor_dims  # noqa: E402
from .adams import e2_model_dims, lam, pi_rank, sn_report  # noqa: E402
