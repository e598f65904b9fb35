import itertools

import pytest
from hypothesis import settings, strategies as st

from endoring.endo import Endo, entry_values
from endoring.groups import PGroup

# enumeration oracles make single examples slow on larger groups
settings.register_profile("endoring", deadline=None)
settings.load_profile("endoring")

# criterion number -> (passed, description), filled by test_acceptance
ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}

BATTERY_P2 = [(1,), (2,), (1, 1), (1, 2), (2, 2), (1, 1, 2), (1, 2, 3)]
BATTERY_P3 = [(1,), (1, 1), (1, 2)]
BATTERY = [PGroup(2, ks) for ks in BATTERY_P2] + [PGroup(3, ks) for ks in BATTERY_P3]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, desc = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {desc}")


@pytest.fixture
def g24():
    """Z(2) + Z(4), the workhorse example."""
    return PGroup(2, (1, 2))


@st.composite
def pgroups(draw, max_rank=3, max_exp=3, primes=(2, 3)):
    p = draw(st.sampled_from(primes))
    ks = draw(st.lists(st.integers(1, max_exp), min_size=1, max_size=max_rank))
    return PGroup(p, tuple(ks))


@st.composite
def endos(draw, A):
    r = A.rank
    return Endo(A, tuple(tuple(draw(st.sampled_from(entry_values(A, i, j))) for j in range(r)) for i in range(r)))


@st.composite
def elements(draw, A):
    return A.element([draw(st.integers(0, m - 1)) for m in A.moduli])


@st.composite
def group_with_endos(draw, n=2, **kw):
    A = draw(pgroups(**kw))
    return (A, *[draw(endos(A)) for _ in range(n)])


@st.composite
def group_with_elements(draw, n=2, **kw):
    A = draw(pgroups(**kw))
    return (A, *[draw(elements(A)) for _ in range(n)])


def closure(A, gens):
    """Subgroup generated by gens, by breadth-first addition (enumeration oracle)."""
    seen = {A.zero()}
    frontier = [A.zero()]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x + g
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


def all_coords(A):
    return list(itertools.product(*(range(m) for m in A.moduli)))
