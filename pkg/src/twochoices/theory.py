"""Closed forms for the biased 2-Choices phase transition.

Notation: ``phi`` is the fraction of red neighbors of an agent, ``p`` the
per-pick probability that a sampled neighbor is overridden to blue. The
one-round expected red fraction is bounded between ``drift_g(phi_min, p)``
and ``drift_g(phi_max, p)`` where ``drift_g(phi) = phi * (1 - drift_f(phi))``.
The sign of ``drift_f`` at its minimum decides the regime, and flips at
``p = 3 - 2*sqrt(2)``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

C_STAR = (math.sqrt(2.0) - 1.0) / 2.0
P_STAR = 3.0 - 2.0 * math.sqrt(2.0)
SIGMA_EMPIRICAL = 0.5


@dataclass(frozen=True)
class ThresholdConstants:
    c_star: float = C_STAR
    p_star: float = P_STAR
    sigma_empirical: float = SIGMA_EMPIRICAL


THRESHOLDS = ThresholdConstants()


def drift_f(phi: float, p: float) -> float:
    return 2.0 * (1.0 - p) ** 2 * phi * phi - (1.0 - p) * (3.0 - p) * phi + 1.0


def drift_f_prime(phi: float, p: float) -> float:
    return 4.0 * (1.0 - p) ** 2 * phi - (1.0 - p) * (3.0 - p)


def drift_g(phi: float, p: float) -> float:
    return phi * (1.0 - drift_f(phi, p))


def phi_bar(p: float) -> float:
    """Minimizer of ``drift_f``: (3 - p) / (4 (1 - p))."""
    if p >= 1.0:
        raise ValueError("phi_bar undefined for p = 1")
    return (3.0 - p) / (4.0 * (1.0 - p))


def f_roots(p: float) -> tuple[float, float] | None:
    """Real roots of ``drift_f`` in increasing order, or None above ``P_STAR``."""
    disc = p * p - 6.0 * p + 1.0
    if disc < 0.0:
        return None
    s = math.sqrt(disc)
    den = 4.0 * (1.0 - p)
    return (3.0 - p - s) / den, (3.0 - p + s) / den


def metastability_ceiling(p: float) -> float:
    """Largest blue-volume fraction in the metastable regime: (1 - 3p) / (4 (1 - p))."""
    if not 0.0 <= p < P_STAR:
        raise ValueError(f"p={p} is outside the metastable regime [0, {P_STAR})")
    return (1.0 - 3.0 * p) / (4.0 * (1.0 - p))


def red_stay_probability(phi_v: float, p: float, is_red: bool) -> float:
    """Probability that agent v is red next round under blue-biased picks."""
    if is_red:
        return 1.0 - (p + (1.0 - p) * (1.0 - phi_v)) ** 2
    return (1.0 - p) ** 2 * phi_v ** 2


def q_from_cr(c_r: float) -> float:
    """Probability that a core agent picks a periphery neighbor: 1 / (1 + c_r)."""
    if c_r < 0:
        raise ValueError("c_r must be nonnegative")
    return 0.0 if math.isinf(c_r) else 1.0 / (1.0 + c_r)


def q_from_cd(c_d: float) -> float:
    """Probability that a periphery agent picks a core neighbor: c_d / (1 + c_d)."""
    if c_d < 0:
        raise ValueError("c_d must be nonnegative")
    return 1.0 if math.isinf(c_d) else c_d / (1.0 + c_d)


def cr_from_q(q: float) -> float:
    return math.inf if q == 0.0 else (1.0 - q) / q


def cd_from_q(q: float) -> float:
    return math.inf if q == 1.0 else q / (1.0 - q)


def core_stays_blue(c_r: float, n: int, epsilon: float, delta: float, variant: str = "main") -> bool:
    """Whether the core is robust enough to stay monochromatic.

    ``main``: c_r > n^((eps + delta) / 2), over O(log n) rounds.
    ``appendix``: c_r > n^(eps / 2 + delta), over poly(log n) rounds.
    """
    if variant == "main":
        exponent = (epsilon + delta) / 2.0
    elif variant == "appendix":
        exponent = epsilon / 2.0 + delta
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return c_r > float(n) ** exponent


class Regime(str, enum.Enum):
    CONSENSUS = "consensus-predicted"
    METASTABILITY = "metastability-predicted"
    OUTSIDE = "outside-theory"


@dataclass(frozen=True)
class Prediction:
    regime: Regime
    dominance_gap: float
    """c_d - c_star; the regime predictions need this bounded away from zero."""
    robustness_bound: float
    """The c_r threshold that applied (n-dependent for consensus, 1/c_star otherwise)."""


def predict_regime(c_r: float, c_d: float, n: int, epsilon: float, delta: float,
                   variant: str = "main") -> Prediction:
    """Regime implied by the core-periphery thresholds, or OUTSIDE when they say nothing."""
    c_r, c_d = float(c_r), float(c_d)
    gap = c_d - C_STAR
    if c_d > C_STAR:
        bound = float(n) ** ((epsilon + delta) / 2.0 if variant == "main" else epsilon / 2.0 + delta)
        regime = Regime.CONSENSUS if core_stays_blue(c_r, n, epsilon, delta, variant) else Regime.OUTSIDE
        return Prediction(regime, gap, bound)
    bound = 1.0 / C_STAR
    if c_d < C_STAR and c_r > bound:
        return Prediction(Regime.METASTABILITY, gap, bound)
    return Prediction(Regime.OUTSIDE, gap, bound)
