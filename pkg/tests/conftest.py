import numpy as np
import pytest
from hypothesis import strategies as st

from algebra.field import FieldCtx
from util.InstrumentationStatistics import InstrumentationStatistics

SMALL_PRIMES = [2, 3, 5, 7, 11]


@pytest.fixture(autouse=True)
def fresh_statistics():
    InstrumentationStatistics.destroyStatistics()
    yield
    InstrumentationStatistics.destroyStatistics()


@pytest.fixture
def gf2():
    return FieldCtx(2)


@pytest.fixture
def gf3():
    return FieldCtx(3)


@pytest.fixture
def gf5():
    return FieldCtx(5)


primes = st.sampled_from(SMALL_PRIMES)


@st.composite
def matrices(draw, p, rows, cols):
    flat = draw(st.lists(st.integers(0, p - 1), min_size=rows * cols, max_size=rows * cols))
    return np.array(flat, dtype=np.int64).reshape(rows, cols)


@st.composite
def alternating_matrices(draw, p, n):
    iu = np.triu_indices(n, 1)
    vals = draw(st.lists(st.integers(0, p - 1), min_size=len(iu[0]), max_size=len(iu[0])))
    a = np.zeros((n, n), dtype=np.int64)
    a[iu] = vals
    a[(iu[1], iu[0])] = np.mod(-a[iu], p)
    return a
