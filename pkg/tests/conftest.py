import functools

import pytest

from hqcount.field import build_field
from hqcount.gauss import GaussTable


@functools.lru_cache(maxsize=None)
def field(q: int):
    return build_field(q)


@functools.lru_cache(maxsize=None)
def gauss_table(q: int) -> GaussTable:
    return GaussTable(field(q))


@pytest.fixture
def f5():
    return field(5)


@pytest.fixture
def f7():
    return field(7)


@pytest.fixture
def f9():
    return field(9)


@pytest.fixture
def f13():
    return field(13)
