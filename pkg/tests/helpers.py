"""Small generators shared by the property tests."""

import itertools
import random

from vbshadow import AxiomViolation, ShadowAction, birack_from_tables, vtsr_birack
from vbshadow.diagram import braid_closure
from vbshadow.search import enumerate_biracks


def all_shadows(b, m):
    """Every valid shadow of ``b`` on ``m`` elements (columns drawn from permutations)."""
    out = []
    perms = list(itertools.permutations(range(m)))
    for cols in itertools.product(perms, repeat=b.n):
        table = tuple(tuple(cols[x][A] for x in range(b.n)) for A in range(m))
        try:
            out.append(ShadowAction(b, m, table).validate())
        except AxiomViolation:
            pass
    return out


def small_biracks():
    three = birack_from_tables(3, [[2, 2, 2], [1, 1, 1], [3, 3, 3]], [[2, 2, 2], [1, 1, 1], [3, 3, 3]],
                               [[1, 1, 2], [2, 2, 1], [3, 3, 3]], [[1, 1, 2], [2, 2, 1], [3, 3, 3]])
    return enumerate_biracks(2).found + [three, vtsr_birack(3, 2, 1, 2, 2), vtsr_birack(3, 1, 2, 0, 2)]


def random_word(rng, strands, length, letters=("X+", "X-", "V")):
    word = []
    for _ in range(length):
        kind = rng.choice(letters)
        word.append((kind, rng.randrange(strands if kind == "T" else strands - 1)))
    return word


def random_diagram(rng, max_edges=8):
    while True:
        k = rng.choice([1, 2, 2, 3])
        if k == 1:
            d = braid_closure([], 1)
            w = (rng.randrange(3),)
            d = d.add_kinks(w)
        else:
            d = braid_closure(random_word(rng, k, rng.randrange(4)), k)
            if rng.random() < 0.5:
                d = d.reverse_components([e for e in range(1, k + 1) if rng.random() < 0.5])
        if len(d.edges) <= max_edges:
            return d


def rng(seed):
    return random.Random(seed)
