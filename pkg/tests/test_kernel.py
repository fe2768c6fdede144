import random

from hypothesis import given, settings, strategies as st

from vbshadow.kernel import (ModuleDescriptor, brute_force_count, diagonal_mod, kernel_descriptor,
                             rank_mod_p, solution_count)


def test_zero_matrix():
    assert solution_count([[0, 0, 0], [0, 0, 0]], 3, 5) == 125
    assert kernel_descriptor([[0, 0, 0]], 3, 6).count == 216


def test_composite_example():
    assert solution_count([[2, 4], [1, 2]], 2, 6) == 6
    assert brute_force_count([[2, 4], [1, 2]], 2, 6) == 6


def test_no_rows():
    assert solution_count([], 2, 4) == 16


def test_random_matrices_against_brute_force():
    rng = random.Random(2024)
    for _ in range(100):
        q = rng.randint(2, 6)
        rows = [[rng.randrange(q) for _ in range(4)] for _ in range(rng.randint(1, 4))]
        assert solution_count(rows, 4, q) == brute_force_count(rows, 4, q)
        assert kernel_descriptor(rows, 4, q).count == brute_force_count(rows, 4, q)


def test_prime_rank():
    assert rank_mod_p([[1, 2], [2, 4]], 2, 5) == 1
    assert rank_mod_p([[1, 2], [2, 4]], 2, 7) == 1
    assert rank_mod_p([[1, 0], [0, 3]], 2, 3) == 1


def test_descriptor_structure():
    d = kernel_descriptor([[2, 0], [0, 0]], 2, 12)
    # kernel of 2x = 0 is Z_2, the free column gives Z_12
    assert d.count == 24
    assert d.elementary_divisors == (2, 3, 4)
    assert d.invariant_factors == (2, 12)
    assert str(d) == "Z_2 + Z_12"
    assert str(ModuleDescriptor(1, ())) == "0"


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8), st.lists(st.lists(st.integers(0, 20), min_size=3, max_size=3), max_size=3))
def test_diagonal_preserves_kernel_size(q, rows):
    diag = diagonal_mod(rows, 3, q)
    assert len(diag) == 3
    expect = brute_force_count(rows, 3, q)
    assert kernel_descriptor(rows, 3, q).count == expect
    assert solution_count(rows, 3, q) == expect
