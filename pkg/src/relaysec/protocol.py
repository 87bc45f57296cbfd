"""The four-step two-hop protocol: candidate set, relay pick, jammers, outcome.

``run_trial`` is the per-realization reference. ``evaluate_trials`` applies the
same rules to whole batches of trials and is what the Monte Carlo engine runs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import ChannelState, sinr
from .params import ParameterError, SystemParams


@dataclass(frozen=True)
class TrialOutcome:
    selected: int
    candidates: tuple[int, ...]
    hop1_ok: bool
    hop2_ok: bool
    eaves_hop1: tuple[bool, ...]
    eaves_hop2: tuple[bool, ...]
    jam1_size: int
    jam2_size: int

    @property
    def transmission_outage(self) -> bool:
        return not (self.hop1_ok and self.hop2_ok)

    @property
    def secrecy_outage(self) -> bool:
        return any(self.eaves_hop1) or any(self.eaves_hop2)


def top_k_candidates(g_sr: np.ndarray, g_rd: np.ndarray, k: int) -> np.ndarray:
    """Indices of the k largest ``min(g_sr, g_rd)`` along the last axis.

    Ordered by decreasing bottleneck gain; ties go to the smaller index.
    """
    bottleneck = np.minimum(g_sr, g_rd)
    return np.argsort(-bottleneck, axis=-1, kind="stable")[..., :k]


def candidate_set(g_sr, g_rd, k: int) -> tuple[int, ...]:
    g_sr = np.asarray(g_sr, dtype=float)
    g_rd = np.asarray(g_rd, dtype=float)
    if g_sr.shape != g_rd.shape or g_sr.ndim != 1:
        raise ParameterError("g_rd", "gain vectors must be 1-D and of equal length")
    if not 1 <= k <= g_sr.shape[0]:
        raise ParameterError("k", f"must satisfy 1 <= k <= n (k={k}, n={g_sr.shape[0]})")
    return tuple(int(j) for j in top_k_candidates(g_sr, g_rd, k))


def pick_index(u, k: int):
    """Map uniform(s) in [0, 1) onto a position in a k-element candidate list."""
    return np.minimum(np.floor(np.asarray(u) * k).astype(np.int64), k - 1)


def select_relay(candidates, rng) -> int:
    """Uniform pick from the candidate set; consumes one ``rng.random()``."""
    if len(candidates) == 0:
        raise RuntimeError("empty candidate set")
    return int(candidates[int(pick_index(rng.random(), len(candidates)))])


def jammer_set_hop1(g_rr, j_star: int, tau: float) -> tuple[int, ...]:
    """Relays ``j != j_star`` whose gain to the selected relay is below tau."""
    col = np.asarray(g_rr)[:, j_star]
    return tuple(j for j in range(col.shape[0]) if j != j_star and col[j] < tau)


def jammer_set_hop2(g_rd, j_star: int, tau: float) -> tuple[int, ...]:
    """Relays ``j != j_star`` whose gain to the destination is below tau."""
    g_rd = np.asarray(g_rd)
    return tuple(j for j in range(g_rd.shape[0]) if j != j_star and g_rd[j] < tau)


def run_trial(params: SystemParams, ch: ChannelState, rng) -> TrialOutcome:
    ch.check_dims(params)
    es, n0 = params.es, params.n0
    candidates = candidate_set(ch.g_sr, ch.g_rd, params.k)
    j_star = select_relay(candidates, rng)

    r1 = jammer_set_hop1(ch.g_rr, j_star, params.tau)
    hop1_ok = sinr(ch.g_sr[j_star], [ch.g_rr[j, j_star] for j in r1], es, n0) >= params.gamma_r
    eaves1 = tuple(
        sinr(ch.g_se[e], [ch.g_re_h1[j, e] for j in r1], es, n0) >= params.gamma_e
        for e in range(params.m)
    )

    # hop 2 runs even if hop 1 failed: the first-hop exposure already happened
    r2 = jammer_set_hop2(ch.g_rd, j_star, params.tau)
    hop2_ok = sinr(ch.g_rd[j_star], [ch.g_rd[j] for j in r2], es, n0) >= params.gamma_r
    eaves2 = tuple(
        sinr(ch.g_re_h2[j_star, e], [ch.g_re_h2[j, e] for j in r2], es, n0) >= params.gamma_e
        for e in range(params.m)
    )
    return TrialOutcome(
        selected=j_star,
        candidates=candidates,
        hop1_ok=bool(hop1_ok),
        hop2_ok=bool(hop2_ok),
        eaves_hop1=tuple(bool(x) for x in eaves1),
        eaves_hop2=tuple(bool(x) for x in eaves2),
        jam1_size=len(r1),
        jam2_size=len(r2),
    )


@dataclass
class TrialBatch:
    """Outcomes of T trials as arrays (one row per trial)."""

    selected: np.ndarray  # (T,) int
    hop1_ok: np.ndarray  # (T,) bool
    hop2_ok: np.ndarray  # (T,) bool
    eaves_hop1: np.ndarray  # (T, m) bool
    eaves_hop2: np.ndarray  # (T, m) bool
    jam1_size: np.ndarray  # (T,) int
    jam2_size: np.ndarray  # (T,) int

    @property
    def transmission_outage(self) -> np.ndarray:
        return ~(self.hop1_ok & self.hop2_ok)

    @property
    def secrecy_outage(self) -> np.ndarray:
        return self.eaves_hop1.any(axis=1) | self.eaves_hop2.any(axis=1)


def evaluate_trials(
    params: SystemParams,
    g_sr: np.ndarray,
    g_rd: np.ndarray,
    g_rr: np.ndarray,
    block: np.ndarray,
    u_select: np.ndarray,
    g_se: np.ndarray,
    g_re_h1: np.ndarray,
    g_re_h2: np.ndarray,
) -> TrialBatch:
    """Vectorized ``run_trial`` over T trials drawn from B fading blocks.

    Legitimate gains have a leading block axis (B, ...); ``block[t]`` maps
    trial t to its block. ``u_select[t]`` is the uniform used for the relay
    pick. Eavesdropper gains have a leading trial axis (T, ...).
    """
    es, n0, tau = params.es, params.n0, params.tau
    n = g_sr.shape[-1]
    t_idx = np.arange(block.shape[0])

    cands = top_k_candidates(g_sr, g_rd, params.k)  # (B, k)
    j_star = cands[block, pick_index(u_select, params.k)]  # (T,)
    not_selected = np.arange(n)[None, :] != j_star[:, None]  # (T, n)

    rr_col = g_rr[block, :, j_star]  # (T, n): gains R_j -> R_j*
    jam1 = not_selected & (rr_col < tau)
    hop1_sig = es * g_sr[block, j_star]
    hop1_ok = hop1_sig / (es * (rr_col * jam1).sum(axis=1) + n0 / 2) >= params.gamma_r
    eaves_int1 = es * np.einsum("tn,tnm->tm", jam1.astype(float), g_re_h1)
    eaves1 = es * g_se / (eaves_int1 + n0 / 2) >= params.gamma_e

    rd = g_rd[block]  # (T, n)
    jam2 = not_selected & (rd < tau)
    hop2_sig = es * rd[t_idx, j_star]
    hop2_ok = hop2_sig / (es * (rd * jam2).sum(axis=1) + n0 / 2) >= params.gamma_r
    eaves_int2 = es * np.einsum("tn,tnm->tm", jam2.astype(float), g_re_h2)
    eaves_sig2 = es * g_re_h2[t_idx, j_star, :]
    eaves2 = eaves_sig2 / (eaves_int2 + n0 / 2) >= params.gamma_e

    return TrialBatch(
        selected=j_star,
        hop1_ok=hop1_ok,
        hop2_ok=hop2_ok,
        eaves_hop1=eaves1,
        eaves_hop2=eaves2,
        jam1_size=jam1.sum(axis=1),
        jam2_size=jam2.sum(axis=1),
    )
