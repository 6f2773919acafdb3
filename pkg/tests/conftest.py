import pytest

from tamebk.base_ring import field_create
from tamebk.rank_one import AmbientParams, Kind
from tamebk.types_shapes import make_type


@pytest.fixture
def f3():
    return field_create(3, 1)


@pytest.fixture
def f9():
    return field_create(3, 2)


@pytest.fixture
def ps_f1():
    return AmbientParams(3, 1, 1, Kind.PRINCIPAL_SERIES)


@pytest.fixture
def cusp_f1():
    return AmbientParams(3, 1, 1, Kind.CUSPIDAL)


@pytest.fixture
def tau_ps_f2():
    """p=3, f=2, e=1 principal series with k0=4, k0'=0; gamma = (1, 1)."""
    return make_type(AmbientParams(3, 2, 1), 4, 0)


@pytest.fixture
def tau_cusp():
    """p=3, K=Q_3 cuspidal with k0=1, k0'=3; gamma = (0, 2)."""
    return make_type(AmbientParams(3, 1, 1, Kind.CUSPIDAL), 1, 3)
