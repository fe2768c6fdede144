import itertools

import pytest

from vbshadow import AxiomViolation, FiniteBirack, SizeGuard, constant_module, enumerate_biracks, \
    enumerate_twists, random_modules, trivial_shadow
from vbshadow.search import check_report, involutions


def _slow_census(n):
    """Validate every pair of bijective tables with the full axiom checker."""
    pairs = list(itertools.product(range(n), repeat=2))
    tables = [tuple(tuple(img[x * n + y] for y in range(n)) for x in range(n))
              for img in itertools.permutations(pairs)]
    found = []
    for B, V in itertools.product(tables, repeat=2):
        try:
            found.append(FiniteBirack(n, B, V).validate())
        except AxiomViolation:
            pass
    return found


def test_involutions():
    assert involutions(3) == [(0, 1, 2), (0, 2, 1), (1, 0, 2), (2, 1, 0)]
    assert len(involutions(4)) == 10


def test_twists(two, three):
    assert enumerate_twists(two).found == []
    one = FiniteBirack(1, ((( 0, 0),),), (((0, 0),),)).validate()
    assert [t.T for t in enumerate_twists(one).found] == [(0,)]
    Ts = [t.T for t in enumerate_twists(three).found]
    assert (1, 0, 2) in Ts
    assert all(t.validate() for t in enumerate_twists(three).found)


def test_census_small():
    assert len(enumerate_biracks(1).found) == 1
    rep = enumerate_biracks(2)
    slow = _slow_census(2)
    assert len(slow) == 8
    assert sorted(b.tables() for b in rep.found) == sorted(b.tables() for b in slow)
    assert check_report(rep)


def test_census_size_guard():
    with pytest.raises(SizeGuard):
        enumerate_biracks(4)


def test_random_modules_deterministic(two, checker):
    a = random_modules(two, checker, 5, trials=3, seed=7)
    b = random_modules(two, checker, 5, trials=3, seed=7)
    assert [m.key() for m in a.found] == [m.key() for m in b.found]
    assert a.found and check_report(a)
    assert a.trials == 3


def test_random_modules_all_ones(two, checker):
    rep = random_modules(two, checker, 2, trials=0, seed=0, all_ones_first=True)
    assert [m.key() for m in rep.found] == [constant_module(two, checker, 2).key()]


def test_random_twisted_modules(twisted3):
    s = trivial_shadow(twisted3)
    rep = random_modules(twisted3, s, 3, trials=2, seed=11)
    assert rep.found and check_report(rep)
    assert all(m.twisted for m in rep.found)


def test_summary_lists_rejections(two, checker):
    rep = random_modules(two, checker, 5, trials=2, seed=1)
    text = rep.summary()
    assert "trials: 2" in text and "found:" in text
