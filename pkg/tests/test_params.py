import math

import pytest

from relaysec.params import ParameterError, SystemParams


def test_defaults_valid():
    p = SystemParams()
    assert 1 <= p.k <= p.n


@pytest.mark.parametrize(
    "changes, field",
    [
        ({"n": 0}, "n"),
        ({"m": -1}, "m"),
        ({"n": 5, "k": 6}, "k"),
        ({"k": 0}, "k"),
        ({"tau": -0.1}, "tau"),
        ({"tau": math.inf}, "tau"),
        ({"gamma_r": 0.0}, "gamma_r"),
        ({"gamma_e": -1.0}, "gamma_e"),
        ({"es": 0.0}, "es"),
        ({"n0": math.nan}, "n0"),
        ({"epsilon_t": 1.0}, "epsilon_t"),
        ({"epsilon_s": 0.0}, "epsilon_s"),
        ({"n": 2.5}, "n"),
    ],
)
def test_invalid_fields_are_named(changes, field):
    with pytest.raises(ParameterError) as err:
        SystemParams(**changes)
    assert err.value.field == field


def test_integral_floats_become_ints():
    p = SystemParams(n=5.0, k=2.0, m=1.0)
    assert isinstance(p.n, int) and p.n == 5


def test_replace_revalidates():
    p = SystemParams(n=5, k=5)
    with pytest.raises(ParameterError):
        p.replace(n=4)
    assert p.replace(tau=0.1).tau == 0.1
