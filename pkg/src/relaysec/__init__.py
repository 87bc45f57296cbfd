"""Two-hop secure relaying with top-k candidate selection and cooperative jamming.

Monte Carlo estimates of transmission and secrecy outage, plus the closed-form
bounds, jamming-threshold window and eavesdropper tolerance of the protocol.
"""

from .bounds import (
    BoundDomainError,
    BoundsReport,
    feasibility,
    max_eavesdroppers,
    psi,
    secrecy_outage_bound,
    tau_lower,
    tau_upper,
    transmission_outage_bound,
)
from .channel import ChannelState, sample_channel_state, sample_exponential, sinr
from .metrics import jain_fairness, wilson_interval
from .montecarlo import SimConfig, SimResult, run_simulation
from .params import ParameterError, SystemParams
from .protocol import TrialOutcome, candidate_set, jammer_set_hop1, jammer_set_hop2, run_trial, select_relay

__all__ = [
    "BoundDomainError",
    "BoundsReport",
    "ChannelState",
    "ParameterError",
    "SimConfig",
    "SimResult",
    "SystemParams",
    "TrialOutcome",
    "candidate_set",
    "feasibility",
    "jain_fairness",
    "jammer_set_hop1",
    "jammer_set_hop2",
    "max_eavesdroppers",
    "psi",
    "run_simulation",
    "run_trial",
    "sample_channel_state",
    "sample_exponential",
    "secrecy_outage_bound",
    "select_relay",
    "sinr",
    "tau_lower",
    "tau_upper",
    "transmission_outage_bound",
    "wilson_interval",
]
