"""Two-issue Bayesian lobbying-access game.

Closed-form equilibria for both leadership capacities, an independent
perfect-Bayesian-equilibrium verifier, exact and simulated expected
payoffs, comparative-statics reports, and a country quadrant/anomaly
audit, all behind a reproducible CLI.
"""

from .core import (
    AccessPosterior,
    AccessRule,
    BeliefSystem,
    BestResponse,
    Capacity,
    GameParams,
    History,
    LobbyRule,
    PayoffVector,
    PolicyRule,
    PolicyVector,
    StateVector,
    StrategyProfile,
    TOL,
    bayes_access_belief,
    dp_utility,
    draw_state,
    policy_best_response,
    validate_params,
)
from .equilibrium import (
    Lemma1Regime,
    Lemma2Regime,
    Region,
    RegimeReport,
    classify_regimes,
    equilibrium_for,
    lemma1_equilibrium,
    lemma2_equilibrium,
)
from .payoff import PayoffEstimate, PlayTrace, exact_payoffs, simulate, single_play
from .theorems import (
    BeliefPrecisionReport,
    ParetoReport,
    theorem1_compare,
    theorem2_check,
)
from .verify import (
    VerificationIntermediates,
    VerificationReport,
    compute_intermediates,
    lobby_payoff_derivative,
    verify_equilibrium,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
