import functools

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from sspring.errors import DescriptorError
from sspring.fixtures import CORPUS
from sspring.ring import check_descriptor, construct, matrix, opposite, pattern, product, zmod

settings.register_profile("default", deadline=None, max_examples=30,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@functools.lru_cache(maxsize=None)
def corpus_ring(name):
    return construct(CORPUS[name])


@pytest.fixture(params=sorted(CORPUS))
def corpus_name(request):
    return request.param


def _closed(mask):
    try:
        check_descriptor(pattern(mask, zmod(2)))
    except DescriptorError:
        return False
    return True


masks = st.lists(st.sampled_from([0, 1]), min_size=3, max_size=3).map(
    lambda upper: ((1, upper[0], upper[1]), (0, 1, upper[2]), (0, 0, 1))).filter(_closed)

small_descriptors = st.one_of(
    st.integers(2, 12).map(zmod),
    st.tuples(st.integers(2, 4), st.integers(2, 4)).map(lambda p: product(zmod(p[0]), zmod(p[1]))),
    masks.map(lambda m: pattern(m, zmod(2))),
    st.just(matrix(2, zmod(2))),
    st.just(pattern(((1, 1), (0, 1)), zmod(3))),
    masks.map(lambda m: opposite(pattern(m, zmod(2)))),
)


@functools.lru_cache(maxsize=None)
def _built(desc):
    return construct(desc)


small_rings = small_descriptors.map(_built)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
