import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import stats

from relaysec.channel import (
    ChannelState,
    exponential_from_uniform,
    sample_channel_state,
    sample_exponential,
    sinr,
    symmetric_gains,
)
from relaysec.params import ParameterError, SystemParams


def test_exponential_from_uniform_examples():
    assert exponential_from_uniform(1.0) == 0.0
    assert exponential_from_uniform(math.exp(-1)) == pytest.approx(1.0, rel=1e-15)


def test_sample_exponential_scalar_and_nonnegative():
    rng = np.random.default_rng(1)
    draws = [sample_exponential(rng) for _ in range(1000)]
    assert all(isinstance(d, float) and d >= 0 for d in draws)


def test_sample_exponential_mean():
    x = sample_exponential(np.random.default_rng(7), 10**6)
    assert abs(x.mean() - 1.0) < 0.01


def test_sample_exponential_ks():
    x = sample_exponential(np.random.default_rng(11), 10**5)
    d = stats.kstest(x, "expon").statistic
    assert d < 0.01


def test_channel_state_shapes_n1_m0():
    ch = sample_channel_state(SystemParams(n=1, m=0), np.random.default_rng(0))
    assert ch.g_rr.shape == (1, 1) and ch.g_rr[0, 0] == 0.0
    assert ch.g_sr.shape == (1,) and ch.g_rd.shape == (1,)
    assert ch.g_se.shape == (0,) and ch.g_re_h1.shape == (1, 0) and ch.g_re_h2.shape == (1, 0)


def test_channel_state_symmetry():
    ch = sample_channel_state(SystemParams(n=3, k=1), np.random.default_rng(0))
    assert ch.g_rr[0, 1] == ch.g_rr[1, 0]
    assert ch.g_rr[1, 2] == ch.g_rr[2, 1]
    np.testing.assert_array_equal(np.diag(ch.g_rr), 0.0)
    assert np.all(ch.g_rr[~np.eye(3, dtype=bool)] > 0)


def _fields(ch):
    return [ch.g_sr, ch.g_rd, ch.g_rr, ch.g_se, ch.g_re_h1, ch.g_re_h2]


def test_channel_state_determinism():
    params = SystemParams(n=5, m=2, k=1)
    a = sample_channel_state(params, np.random.default_rng(42))
    b = sample_channel_state(params, np.random.default_rng(42))
    c = sample_channel_state(params, np.random.default_rng(43))
    for x, y in zip(_fields(a), _fields(b)):
        assert x.tobytes() == y.tobytes()
    assert any(x.tobytes() != z.tobytes() for x, z in zip(_fields(a), _fields(c)))


def test_channel_state_marginal_means():
    params = SystemParams(n=4, m=3, k=1)
    rng = np.random.default_rng(5)
    states = [sample_channel_state(params, rng) for _ in range(20000)]
    for name in ("g_sr", "g_rd", "g_se", "g_re_h1", "g_re_h2"):
        mean = np.mean([getattr(s, name) for s in states])
        assert abs(mean - 1) < 0.02, name
    off = np.mean([s.g_rr[0, 3] for s in states])
    assert abs(off - 1) < 0.05
    # hop-1 and hop-2 eavesdropper gains are independent draws
    h1 = np.array([s.g_re_h1[0, 0] for s in states])
    h2 = np.array([s.g_re_h2[0, 0] for s in states])
    assert abs(np.corrcoef(h1, h2)[0, 1]) < 0.03


def test_symmetric_gains_batched():
    upper = np.arange(1, 7, dtype=float).reshape(2, 3)
    g = symmetric_gains(upper, 3)
    assert g.shape == (2, 3, 3)
    np.testing.assert_array_equal(g[0], [[0, 1, 2], [1, 0, 3], [2, 3, 0]])
    np.testing.assert_array_equal(g[1], [[0, 4, 5], [4, 0, 6], [5, 6, 0]])


def test_check_dims_rejects_mismatch():
    ch = sample_channel_state(SystemParams(n=3, m=1, k=1), np.random.default_rng(0))
    with pytest.raises(ParameterError) as err:
        ch.check_dims(SystemParams(n=4, m=1, k=1))
    assert err.value.field == "g_sr"


def test_sinr_examples():
    assert sinr(0.0, [1.0, 2.0], 1.0, 2.0) == 0.0
    assert sinr(1.0, [], 1.0, 2.0) == 1.0
    assert sinr(2.0, [1.0, 1.0], 1.0, 2.0) == pytest.approx(2 / 3, rel=1e-15)


gain = st.floats(min_value=0.0, max_value=50.0, allow_nan=False)


@given(s=gain, extra=st.floats(min_value=1e-6, max_value=10.0), jams=st.lists(gain, max_size=6), es=st.floats(0.1, 10), n0=st.floats(0.01, 10))
def test_sinr_monotone_in_signal(s, extra, jams, es, n0):
    assert sinr(s + extra, jams, es, n0) >= sinr(s, jams, es, n0)


@given(s=gain, jams=st.lists(gain, min_size=1, max_size=6), idx=st.integers(0, 5), extra=st.floats(1e-6, 10.0))
def test_sinr_monotone_in_jamming(s, jams, idx, extra):
    bumped = list(jams)
    bumped[idx % len(jams)] += extra
    assert sinr(s, bumped, 1.0, 0.2) <= sinr(s, jams, 1.0, 0.2)


def test_channel_state_is_value_type():
    ch = ChannelState(np.ones(1), np.ones(1), np.zeros((1, 1)), np.ones(0), np.ones((1, 0)), np.ones((1, 0)))
    assert ch.n == 1 and ch.m == 0
