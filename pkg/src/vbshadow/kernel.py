"""Counting solutions of homogeneous linear systems over Z_q."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

import sympy


def is_prime(q: int) -> bool:
    return sympy.isprime(q)


def rank_mod_p(rows, ncols, p) -> int:
    M = [[v % p for v in row] for row in rows]
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(M)) if M[i][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(M[rank][col], -1, p)
        M[rank] = [v * inv % p for v in M[rank]]
        for i in range(len(M)):
            if i != rank and M[i][col]:
                f = M[i][col]
                M[i] = [(a - f * b) % p for a, b in zip(M[i], M[rank])]
        rank += 1
    return rank


def diagonal_mod(rows, ncols, q) -> list[int]:
    """Diagonal of an equivalent diagonal matrix over Z_q, padded with 0 to ``ncols``.

    Only unimodular (Bezout) row and column operations are used, so the
    kernel over Z_q is preserved up to an automorphism.
    """
    M = [[v % q for v in row] for row in rows]
    nrows = len(M)
    diag = []
    for t in range(min(nrows, ncols)):
        piv = next(((i, j) for i in range(t, nrows) for j in range(t, ncols) if M[i][j]), None)
        if piv is None:
            break
        i, j = piv
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if M[i][t]:
                    g, s, u, w = _bezout(M[t][t], M[i][t])
                    rt, ri = M[t], M[i]
                    M[t] = [(s * x + u * y) % q for x, y in zip(rt, ri)]
                    M[i] = [(-w * x + g * y) % q for x, y in zip(rt, ri)]
            for j in range(t + 1, ncols):
                if M[t][j]:
                    g, s, u, w = _bezout(M[t][t], M[t][j])
                    for row in M:
                        x, y = row[t], row[j]
                        row[t] = (s * x + u * y) % q
                        row[j] = (-w * x + g * y) % q
                    dirty = True
            if dirty and not any(M[i][t] for i in range(t + 1, nrows)):
                dirty = False
        diag.append(M[t][t])
    diag += [0] * (ncols - len(diag))
    return diag


def _bezout(a, b):
    """``(a/g, s, t, b/g)`` with ``s a + t b = g``; the step matrix has determinant 1."""
    if a and b % a == 0:
        return 1, 1, 0, b // a
    g, s, t = _egcd(a, b)
    return a // g, s, t, b // g


def _egcd(a, b):
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, s, t = _egcd(b, a % b)
    return g, t, s - (a // b) * t


def _prime_powers(k):
    return [p ** e for p, e in sorted(sympy.factorint(k).items())]


@dataclass(frozen=True, order=True)
class ModuleDescriptor:
    """Kernel of a presentation matrix over Z_q, as an abelian group.

    ``elementary_divisors`` are the prime-power orders of its cyclic factors,
    sorted; ``invariant_factors`` the usual divisor chain.
    """

    count: int
    elementary_divisors: tuple[int, ...]

    @property
    def invariant_factors(self) -> tuple[int, ...]:
        by_prime = {}
        for d in self.elementary_divisors:
            p = min(sympy.factorint(d))
            by_prime.setdefault(p, []).append(d)
        for v in by_prime.values():
            v.sort(reverse=True)
        length = max((len(v) for v in by_prime.values()), default=0)
        out = []
        for i in range(length):
            f = 1
            for v in by_prime.values():
                if i < len(v):
                    f *= v[i]
            out.append(f)
        return tuple(sorted(out))

    def __str__(self):
        if not self.elementary_divisors:
            return "0"
        return " + ".join(f"Z_{d}" for d in self.invariant_factors)


def kernel_descriptor(rows, ncols, q) -> ModuleDescriptor:
    diag = diagonal_mod(rows, ncols, q)
    divs = []
    count = 1
    for d in diag:
        k = gcd(d, q)  # gcd(0, q) == q
        count *= k
        if k > 1:
            divs.extend(_prime_powers(k))
    return ModuleDescriptor(count, tuple(sorted(divs)))


def solution_count(rows, ncols, q) -> int:
    """Number of ``z`` in ``Z_q^ncols`` with ``rows . z == 0``."""
    if is_prime(q):
        return q ** (ncols - rank_mod_p(rows, ncols, q))
    return kernel_descriptor(rows, ncols, q).count


def brute_force_count(rows, ncols, q) -> int:
    total = 0
    for z in itertools.product(range(q), repeat=ncols):
        if all(sum(a * b for a, b in zip(row, z)) % q == 0 for row in rows):
            total += 1
    return total
