import numpy as np
import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from semiring_lab.catalog import catalog, parse_spec
from semiring_lab.core import FiniteSemiring
from semiring_lab.enumeration import enumerate_semirings

settings.register_profile("default", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SMALL = [S for spec, S in catalog() if S.size <= 9]
UNIVERSE3 = [S for n in (1, 2, 3) for S in enumerate_semirings(n)]
POOL = SMALL + UNIVERSE3

small_semirings = st.sampled_from(POOL)


def relabel(S: FiniteSemiring, p) -> FiniteSemiring:
    """Copy of S where old element x is called p[x]."""
    p = np.asarray(p)
    n = S.size
    add = np.empty((n, n), dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    add[np.ix_(p, p)] = p[S.add]
    mul[np.ix_(p, p)] = p[S.mul]
    return FiniteSemiring(add, mul, p[S.zero], p[S.one])


@st.composite
def relabelled(draw, pool=POOL):
    S = draw(st.sampled_from(pool))
    p = draw(st.permutations(list(range(S.size))))
    return S, relabel(S, p), np.asarray(p)


@pytest.fixture(scope="session")
def B():
    return parse_spec("B")


@pytest.fixture(scope="session")
def B3():
    return parse_spec("B3")


@pytest.fixture(scope="session")
def B31():
    return parse_spec("B31")


@pytest.fixture(scope="session")
def Z4():
    return parse_spec("Z4")


@pytest.fixture(scope="session")
def M2B():
    return parse_spec("MatB 2")
