"""Closed-form outage bounds, the admissible jamming-threshold window and the
eavesdropper tolerance of the top-k relay protocol.

All logarithms are natural. Formulas with a restricted domain raise
:class:`BoundDomainError` when evaluated outside it; :func:`feasibility`
collects those into a report instead of raising.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .params import SystemParams

# exact integer binomials up to this n, log-gamma above
EXACT_BINOMIAL_MAX_N = 60


class BoundDomainError(ValueError):
    """A closed-form bound is inapplicable at the given parameters."""


def _psi_exponent(n: int, tau: float, gamma_r: float) -> float:
    return 2.0 * gamma_r * (n - 1) * -math.expm1(-tau) * tau


def psi(n: int, tau: float, gamma_r: float) -> float:
    """Reliability factor ``exp(-2*gamma_r*(n-1)*(1-exp(-tau))*tau)``."""
    return math.exp(-_psi_exponent(n, tau, gamma_r))


def _binomial_pmf(n: int, p: float, q: float) -> np.ndarray:
    """Bin(n, p) probabilities for i = 0..n, with ``q = 1 - p`` passed in
    separately so neither loses precision near 0 or 1."""
    if p <= 0.0:
        out = np.zeros(n + 1)
        out[0] = 1.0
        return out
    if p >= 1.0:
        out = np.zeros(n + 1)
        out[n] = 1.0
        return out
    if n <= EXACT_BINOMIAL_MAX_N:
        return np.array([math.comb(n, i) * p**i * q ** (n - i) for i in range(n + 1)])
    i = np.arange(n + 1)
    log_c = gammaln(n + 1) - gammaln(i + 1) - gammaln(n - i + 1)
    return np.exp(log_c + i * math.log(p) + (n - i) * math.log(q))


def selection_failure_mean(n: int, k: int, psi_value: float, one_minus_psi: float | None = None) -> float:
    """Average over j = 1..k of ``P(Bin(n, 1-psi) >= n-j+1)``.

    This is the quantity X whose union form ``2X - X^2`` bounds the
    transmission outage.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if one_minus_psi is None:
        one_minus_psi = 1.0 - psi_value
    pmf = _binomial_pmf(n, one_minus_psi, psi_value)
    # upper tails T_j = sum_{i >= n-j+1} pmf[i] for j = 1..k
    tails = np.cumsum(pmf[::-1])[:k]
    return float(tails.sum() / k)


def _union(x: float) -> float:
    return 2.0 * x - x * x


def transmission_outage_bound_raw(n: int, k: int, tau: float, gamma_r: float) -> float:
    e = _psi_exponent(n, tau, gamma_r)
    return _union(selection_failure_mean(n, k, math.exp(-e), -math.expm1(-e)))


def transmission_outage_bound(n: int, k: int, tau: float, gamma_r: float) -> float:
    return min(1.0, max(0.0, transmission_outage_bound_raw(n, k, tau, gamma_r)))


def eavesdropper_exposure(n: int, m: float, tau: float, gamma_e: float) -> float:
    """``m * (1+gamma_e)^-((n-1)(1-exp(-tau)))``, the union term of the secrecy bound."""
    return m * math.exp(-(n - 1) * -math.expm1(-tau) * math.log1p(gamma_e))


def secrecy_outage_bound_raw(n: int, m: float, tau: float, gamma_e: float) -> float:
    return _union(eavesdropper_exposure(n, m, tau, gamma_e))


def secrecy_outage_bound(n: int, m: float, tau: float, gamma_e: float) -> float:
    """Secrecy outage bound clamped to [0, 1].

    Once the exposure term passes 1 the quadratic is no longer a probability
    bound; the result is then 1 (see ``BoundsReport.vacuous``).
    """
    y = eavesdropper_exposure(n, m, tau, gamma_e)
    if y >= 1.0:
        return 1.0
    return max(0.0, _union(y))


def _budget(epsilon: float) -> float:
    """``1 - sqrt(1 - epsilon)`` without cancellation."""
    return -math.expm1(0.5 * math.log1p(-epsilon))


def _reliability_base_minus_one(k: int, epsilon_t: float) -> float:
    # B = 2 * r**(1/k) - 1 with r = C(k, k//2) * (1 + k*sqrt(1-eps_t)) / 2**k;
    # B - 1 = 2*expm1(log(r)/k) keeps full precision when B is close to 1
    d = _budget(epsilon_t)
    log_r = (math.log(math.comb(k, k // 2)) - k * math.log(2.0)) + math.log1p(k) + math.log1p(-k * d / (1 + k))
    return 2.0 * math.expm1(log_r / k)


def reliability_base(k: int, epsilon_t: float) -> float:
    """``[C(k, floor(k/2)) * (1 + k*sqrt(1-eps_t))]^(1/k) - 1``."""
    return 1.0 + _reliability_base_minus_one(k, epsilon_t)


def log_reliability_base(k: int, epsilon_t: float) -> float:
    """Natural log of :func:`reliability_base`; raises if the base is outside (0, 1)."""
    b_minus_one = _reliability_base_minus_one(k, epsilon_t)
    if not -1.0 < b_minus_one < 0.0:
        raise BoundDomainError(
            f"reliability base {1.0 + b_minus_one:.6g} outside (0, 1) for k={k}, epsilon_t={epsilon_t}"
        )
    return math.log1p(b_minus_one)


def tau_upper(n: int, k: int, gamma_r: float, epsilon_t: float) -> float:
    """Largest jamming threshold compatible with the reliability target."""
    if n < 2:
        raise BoundDomainError("tau upper bound needs n >= 2")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    return math.sqrt(-log_reliability_base(k, epsilon_t) / (2.0 * gamma_r * (n - 1)))


def secrecy_base(n: int, m: float, gamma_e: float, epsilon_s: float) -> float:
    """``1 + log((1-sqrt(1-eps_s))/m) / ((n-1)*log(1+gamma_e))``; tau_min = -log of it."""
    return 1.0 + math.log(_budget(epsilon_s) / m) / ((n - 1) * math.log1p(gamma_e))


def tau_lower(n: int, m: float, gamma_e: float, epsilon_s: float) -> float:
    """Smallest jamming threshold compatible with the secrecy target."""
    if n < 2:
        raise BoundDomainError("tau lower bound needs n >= 2")
    if m <= 0:
        raise ValueError("tau lower bound needs m > 0")
    a = secrecy_base(n, m, gamma_e, epsilon_s)
    if a <= 0.0:
        raise BoundDomainError(
            f"no finite tau meets epsilon_s={epsilon_s} with m={m}, n={n} (base {a:.6g} <= 0)"
        )
    return max(0.0, -math.log(a))


def max_eavesdroppers_real(n: int, k: int, gamma_r: float, gamma_e: float, epsilon_t: float, epsilon_s: float) -> float:
    """Tolerable eavesdropper count before flooring."""
    if n < 2:
        raise BoundDomainError("eavesdropper tolerance needs n >= 2")
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    exponent = math.sqrt(-(n - 1) * log_reliability_base(k, epsilon_t) / (2.0 * gamma_r))
    # dividing by (1+gamma_e)^-exponent
    log_m = math.log(_budget(epsilon_s)) + exponent * math.log1p(gamma_e)
    if log_m > 700.0:
        raise BoundDomainError(f"eavesdropper tolerance exp({log_m:.4g}) exceeds float range")
    return math.exp(log_m)


def max_eavesdroppers(n: int, k: int, gamma_r: float, gamma_e: float, epsilon_t: float, epsilon_s: float) -> int:
    return math.floor(max_eavesdroppers_real(n, k, gamma_r, gamma_e, epsilon_t, epsilon_s))


@dataclass(frozen=True)
class BoundsReport:
    psi: float
    p_out_t_bound: float
    p_out_s_bound: float
    tau_min: float | None
    tau_max: float | None
    m_max: int | None
    feasible: bool
    tau_in_window: bool
    vacuous: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = ()


def feasibility(params: SystemParams) -> BoundsReport:
    p = params
    diagnostics = []
    vacuous = []

    psi_value = psi(p.n, p.tau, p.gamma_r)
    t_raw = transmission_outage_bound_raw(p.n, p.k, p.tau, p.gamma_r)
    if t_raw > 1.0:
        vacuous.append("p_out_t_bound")
    if eavesdropper_exposure(p.n, p.m, p.tau, p.gamma_e) > 1.0:
        vacuous.append("p_out_s_bound")
    for name in vacuous:
        diagnostics.append(f"{name}:vacuous")
    p_t = min(1.0, max(0.0, t_raw))
    p_s = secrecy_outage_bound(p.n, p.m, p.tau, p.gamma_e)

    def attempt(name, fn, *args):
        try:
            return fn(*args)
        except BoundDomainError:
            diagnostics.append(f"{name}:bound-inapplicable")
            return None

    tau_max = attempt("tau_max", tau_upper, p.n, p.k, p.gamma_r, p.epsilon_t)
    if p.m == 0:
        tau_min = 0.0
    else:
        tau_min = attempt("tau_min", tau_lower, p.n, p.m, p.gamma_e, p.epsilon_s)
    m_max = attempt(
        "m_max", max_eavesdroppers, p.n, p.k, p.gamma_r, p.gamma_e, p.epsilon_t, p.epsilon_s
    )

    feasible = tau_min is not None and tau_max is not None and tau_min <= tau_max
    tau_in_window = feasible and tau_min <= p.tau <= tau_max
    return BoundsReport(
        psi=psi_value,
        p_out_t_bound=p_t,
        p_out_s_bound=p_s,
        tau_min=tau_min,
        tau_max=tau_max,
        m_max=m_max,
        feasible=feasible,
        tau_in_window=tau_in_window,
        vacuous=tuple(vacuous),
        diagnostics=tuple(diagnostics),
    )
