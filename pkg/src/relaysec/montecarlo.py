"""Seeded, block-fading Monte Carlo estimation of the two outage probabilities.

Work is cut into chunks of whole fading blocks. Chunk ``c`` draws from its own
PCG64 stream keyed by ``(seed, c)``, and the chunk boundaries depend only on
``trials`` and ``block_length``. Every accumulator is an integer count, so the
result is a pure function of ``(params, cfg)`` whatever ``workers`` is.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import sample_eaves_gains, sample_legit_gains
from .metrics import jain_fairness, wilson_interval
from .params import ParameterError, SystemParams
from .protocol import evaluate_trials

# trials evaluated per vectorized batch; fixes chunking, so changing it changes results
BATCH_TRIALS = 1 << 15


@dataclass(frozen=True)
class SimConfig:
    trials: int = 100_000
    block_length: int = 1
    seed: int = 0
    workers: int = 1

    def __post_init__(self):
        for name in ("trials", "block_length", "workers", "seed"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise ParameterError(name, "must be an integer")
            object.__setattr__(self, name, int(value))
        if self.trials < 1:
            raise ParameterError("trials", "must be >= 1")
        if self.block_length < 1:
            raise ParameterError("block_length", "must be >= 1")
        if self.workers < 1:
            raise ParameterError("workers", "must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ParameterError("seed", "must be an unsigned 64-bit integer")


@dataclass(frozen=True)
class SimResult:
    trials: int
    transmission_outages: int
    secrecy_outages: int
    p_out_t_hat: float
    p_out_s_hat: float
    ci_t: tuple[float, float]
    ci_s: tuple[float, float]
    selection_counts: np.ndarray
    jain_index: float
    mean_jam1: float
    mean_jam2: float
    # per-eavesdropper, per-hop decoding events (2*m observations per trial)
    eaves_hop_successes: int
    eaves_hop_observations: int

    @property
    def eaves_hop_rate(self) -> float:
        if self.eaves_hop_observations == 0:
            return 0.0
        return self.eaves_hop_successes / self.eaves_hop_observations


@dataclass
class _Tally:
    t_out: int = 0
    s_out: int = 0
    jam1: int = 0
    jam2: int = 0
    eaves: int = 0
    selection: np.ndarray | None = None

    def add(self, other: "_Tally"):
        self.t_out += other.t_out
        self.s_out += other.s_out
        self.jam1 += other.jam1
        self.jam2 += other.jam2
        self.eaves += other.eaves
        self.selection = other.selection if self.selection is None else self.selection + other.selection


def chunk_layout(cfg: SimConfig) -> list[tuple[int, int]]:
    """``(first_block, block_count)`` per chunk."""
    n_blocks = math.ceil(cfg.trials / cfg.block_length)
    per_chunk = max(1, BATCH_TRIALS // cfg.block_length)
    return [(b, min(per_chunk, n_blocks - b)) for b in range(0, n_blocks, per_chunk)]


def chunk_rng(seed: int, chunk: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed, spawn_key=(chunk,))))


def _run_chunk(params: SystemParams, cfg: SimConfig, chunk: int, first_block: int, n_blocks: int) -> _Tally:
    rng = chunk_rng(cfg.seed, chunk)
    n, m = params.n, params.m
    g_sr, g_rd, g_rr = sample_legit_gains(n, rng, blocks=n_blocks)

    start = first_block * cfg.block_length
    stop = min(cfg.trials, (first_block + n_blocks) * cfg.block_length)
    tally = _Tally(selection=np.zeros(n, dtype=np.int64))
    for lo in range(start, stop, BATCH_TRIALS):
        hi = min(stop, lo + BATCH_TRIALS)
        block = np.arange(lo, hi) // cfg.block_length - first_block
        u_select = rng.random(hi - lo)
        g_se, g_re_h1, g_re_h2 = sample_eaves_gains(n, m, rng, trials=hi - lo)
        batch = evaluate_trials(params, g_sr, g_rd, g_rr, block, u_select, g_se, g_re_h1, g_re_h2)
        tally.add(
            _Tally(
                t_out=int(batch.transmission_outage.sum()),
                s_out=int(batch.secrecy_outage.sum()),
                jam1=int(batch.jam1_size.sum()),
                jam2=int(batch.jam2_size.sum()),
                eaves=int(batch.eaves_hop1.sum() + batch.eaves_hop2.sum()),
                selection=np.bincount(batch.selected, minlength=n),
            )
        )
    return tally


def run_simulation(params: SystemParams, cfg: SimConfig) -> SimResult:
    layout = chunk_layout(cfg)

    def work(item):
        c, (first, count) = item
        return _run_chunk(params, cfg, c, first, count)

    if cfg.workers == 1 or len(layout) == 1:
        parts = list(map(work, enumerate(layout)))
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            parts = list(pool.map(work, enumerate(layout)))
    total = _Tally(selection=np.zeros(params.n, dtype=np.int64))
    for part in parts:
        total.add(part)

    trials = cfg.trials
    return SimResult(
        trials=trials,
        transmission_outages=total.t_out,
        secrecy_outages=total.s_out,
        p_out_t_hat=total.t_out / trials,
        p_out_s_hat=total.s_out / trials,
        ci_t=wilson_interval(total.t_out, trials),
        ci_s=wilson_interval(total.s_out, trials),
        selection_counts=total.selection,
        jain_index=jain_fairness(total.selection),
        mean_jam1=total.jam1 / trials,
        mean_jam2=total.jam2 / trials,
        eaves_hop_successes=total.eaves,
        eaves_hop_observations=2 * params.m * trials,
    )
