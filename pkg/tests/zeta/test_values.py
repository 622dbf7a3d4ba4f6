import cmath

import pytest

from src.walkzeta.errors import ParameterError, RadiusError
from src.walkzeta.zeta.values import CoeffValue, ZetaQuery, ZetaValue, check_radius, validate_index


def test_zeta_value_from_log():
    value = ZetaValue.from_log(complex(-0.25, 0.5))
    assert value.zeta_inverse == pytest.approx(cmath.exp(complex(-0.25, 0.5)))
    assert value.uncertainty is None
    assert value.power(4) == pytest.approx(cmath.exp(complex(-1.0, 2.0)))


def test_coeff_value_is_complex():
    assert isinstance(CoeffValue(0.5).c, complex)


@pytest.mark.parametrize("r", [0, -1, 1.5, True])
def test_validate_index_rejects(r):
    with pytest.raises(ParameterError):
        validate_index(r)


def test_query():
    q = ZetaQuery(0.5, 3)
    assert q.u == 0.5 + 0j
    with pytest.raises(ParameterError):
        ZetaQuery(0.5, 0)


def test_check_radius():
    assert check_radius(0.999, 1.0) == 0.999
    with pytest.raises(RadiusError) as info:
        check_radius(0.5j, 2.0)
    assert info.value.rho == 2.0
    assert "rho = 2" in str(info.value)
