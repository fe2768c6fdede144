"""Finite virtual biracks, twisted virtual biracks and their shadows.

Elements are 0-indexed internally.  Every table that crosses the public
boundary (constructors, file formats, reports) is 1-indexed and laid out the
way birack matrices are usually printed: ``B1[j][i] = k`` and
``B2[i][j] = l`` when ``B(x_i, x_j) = (x_k, x_l)``, likewise for ``V``.
So a row always follows one strand and a column names the strand it meets.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .errors import AxiomViolation, ConstraintViolation, DimensionMismatch


Pair = tuple[int, int]


def _check_square(name, table, n, top):
    if len(table) != n or any(len(row) != n for row in table):
        raise DimensionMismatch(f"{name} must be {n}x{n}")
    for row in table:
        for v in row:
            if not (isinstance(v, int) and 1 <= v <= top):
                raise DimensionMismatch(f"{name} entry {v!r} outside 1..{top}")


def _pair_map(first, second, n):
    """Build ``F[x][y]`` from printed 1-indexed tables (first is column-indexed by x)."""
    return tuple(
        tuple((first[y][x] - 1, second[x][y] - 1) for y in range(n)) for x in range(n)
    )


def _invert_pairs(F, n, axiom):
    inv = {}
    for x, y in itertools.product(range(n), repeat=2):
        out = F[x][y]
        if out in inv:
            px, py = inv[out]
            raise AxiomViolation(axiom, (px + 1, py + 1, x + 1, y + 1), "two pairs share an image")
        inv[out] = (x, y)
    return inv


def _sideways(F, n, axiom):
    """Table for the map sending ``(F1(x,y), x)`` to ``(F2(x,y), y)``."""
    side = {}
    image = {}
    for x, y in itertools.product(range(n), repeat=2):
        a, b = F[x][y]
        key = (a, x)
        if key in side:
            raise AxiomViolation(axiom, (x + 1, y + 1), "sideways map is not well defined")
        val = (b, y)
        if val in image:
            raise AxiomViolation(axiom, (x + 1, y + 1), "sideways map is not injective")
        side[key] = val
        image[val] = key
    return side, image


def _is_perm(seq, n):
    return sorted(seq) == list(range(n))


def perm_order(p) -> int:
    """Order of a permutation given as a sequence of images."""
    n = len(p)
    seen = [False] * n
    order = 1
    for start in range(n):
        if seen[start]:
            continue
        length = 0
        x = start
        while not seen[x]:
            seen[x] = True
            x = p[x]
            length += 1
        order = order * length // math.gcd(order, length)
    return order


def cycle_string(p) -> str:
    """Cycle notation of a 0-indexed permutation, 1-indexed; identity prints as ``()``."""
    seen = set()
    cycles = []
    for start in range(len(p)):
        if start in seen or p[start] == start:
            seen.add(start)
            continue
        cyc = []
        x = start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = p[x]
        cycles.append("(" + " ".join(cyc) + ")")
    return "".join(cycles) or "()"


@dataclass(frozen=True)
class KinkData:
    alpha: tuple[int, ...]
    pi: tuple[int, ...]
    N: int


@dataclass(frozen=True, eq=False)
class FiniteBirack:
    """A validated finite virtual birack.

    ``B[x][y]`` and ``V[x][y]`` hold the image pairs.  Use
    :func:`birack_from_tables` or the other constructors; they run every axiom.
    """

    n: int
    B: tuple
    V: tuple

    twisted = False

    def __eq__(self, other):
        return isinstance(other, FiniteBirack) and not other.twisted and (
            self.n, self.B, self.V) == (other.n, other.B, other.V)

    def __hash__(self):
        return hash((self.n, self.B, self.V))

    @property
    def birack(self) -> "FiniteBirack":
        return self

    # -- operations, named after the usual exponent/subscript notation
    def up(self, x, y):
        """``y^x``: the under strand ``y`` after passing under ``x``."""
        return self.B[x][y][0]

    def down(self, x, y):
        """``x_y``: the over strand ``x`` after passing over ``y``."""
        return self.B[x][y][1]

    def vup(self, x, y):
        return self.V[x][y][0]

    def vdown(self, x, y):
        return self.V[x][y][1]

    @cached_property
    def B_inv(self) -> dict:
        return _invert_pairs(self.B, self.n, "B bijective")

    @cached_property
    def V_inv(self) -> dict:
        return _invert_pairs(self.V, self.n, "V bijective")

    @cached_property
    def _S(self):
        return _sideways(self.B, self.n, "B sideways invertible")

    @cached_property
    def _vS(self):
        return _sideways(self.V, self.n, "V sideways invertible")

    def S(self, a, b) -> Pair:
        return self._S[0][(a, b)]

    def S_inv(self, c, d) -> Pair:
        return self._S[1][(c, d)]

    def vS(self, a, b) -> Pair:
        return self._vS[0][(a, b)]

    @cached_property
    def kink(self) -> KinkData:
        n = self.n
        second = [self.S_inv(x, x)[1] for x in range(n)]
        alpha = [0] * n
        for x, img in enumerate(second):
            alpha[img] = x
        pi = tuple(self.S_inv(alpha[x], alpha[x])[0] for x in range(n))
        return KinkData(tuple(alpha), pi, perm_order(pi))

    @property
    def rank(self) -> int:
        return self.kink.N

    @cached_property
    def is_biquandle(self) -> bool:
        """Whether ``(S o diag)_1 == (S o diag)_2``; reported only."""
        return all(self.S(x, x)[0] == self.S(x, x)[1] for x in range(self.n))

    def tables(self):
        """The printed 1-indexed tables ``(B1, B2, V1, V2)``."""
        n = self.n
        B1 = [[self.B[i][j][0] + 1 for i in range(n)] for j in range(n)]
        B2 = [[self.B[i][j][1] + 1 for j in range(n)] for i in range(n)]
        V1 = [[self.V[i][j][0] + 1 for i in range(n)] for j in range(n)]
        V2 = [[self.V[i][j][1] + 1 for j in range(n)] for i in range(n)]
        return B1, B2, V1, V2

    def validate(self):
        n = self.n
        B, V = self.B, self.V
        self.B_inv
        self.V_inv
        self._S
        self._vS
        for sign, fn in (("", self.S), ("^-1", self.S_inv)):
            diag = [fn(x, x) for x in range(n)]
            for k in (0, 1):
                if not _is_perm([d[k] for d in diag], n):
                    raise AxiomViolation(f"diagonal invertibility (S{sign} o diag)_{k + 1}")
        for x, y in itertools.product(range(n), repeat=2):
            u, w = V[x][y]
            if V[u][w] != (x, y):
                raise AxiomViolation("V involution", (x + 1, y + 1))
        for x in range(n):
            a, b = self.vS(x, x)
            if a != b:
                raise AxiomViolation("V diagonal fixing", (x + 1,))

        def left(F, t):
            a, b = F[t[0]][t[1]]
            return (a, b, t[2])

        def right(F, t):
            a, b = F[t[1]][t[2]]
            return (t[0], a, b)

        for name, F, G in (("Yang-Baxter B", B, B), ("Yang-Baxter V", V, V), ("Yang-Baxter mixed", None, None)):
            for t in itertools.product(range(n), repeat=3):
                if F is not None:
                    lhs = left(F, right(F, left(F, t)))
                    rhs = right(F, left(F, right(F, t)))
                else:
                    lhs = left(B, right(V, left(V, t)))
                    rhs = right(V, left(V, right(B, t)))
                if lhs != rhs:
                    raise AxiomViolation(name, tuple(v + 1 for v in t))
        self.kink
        return self


def raw_pair_maps(n, B1, B2, V1, V2):
    for name, tab in (("B1", B1), ("B2", B2), ("V1", V1), ("V2", V2)):
        _check_square(name, tab, n, n)
    return _pair_map(B1, B2, n), _pair_map(V1, V2, n)


def birack_from_tables(n, B1, B2, V1, V2) -> FiniteBirack:
    if n < 1:
        raise DimensionMismatch("a birack needs at least one element")
    B, V = raw_pair_maps(n, B1, B2, V1, V2)
    return FiniteBirack(n, B, V).validate()


def birack_from_maps(n, bmap, vmap) -> FiniteBirack:
    """Validated birack from callables on 0-indexed pairs."""
    B = tuple(tuple(tuple(bmap(x, y)) for y in range(n)) for x in range(n))
    V = tuple(tuple(tuple(vmap(x, y)) for y in range(n)) for x in range(n))
    return FiniteBirack(n, B, V).validate()


def _unit(a, n):
    return math.gcd(a % n, n) == 1


def vtsr_birack(n, v, t, s, r) -> FiniteBirack:
    """The birack ``B(x,y) = (ty+sx, rx)``, ``V(x,y) = (vy, v^-1 x)`` on ``Z_n``.

    Element ``k`` (1-indexed) stands for the residue ``k mod n``, so ``n`` is zero.
    """
    for name, val in (("v", v), ("t", t), ("r", r)):
        if not _unit(val, n):
            raise ConstraintViolation(f"{name}={val} is not a unit mod {n}")
    if (s * s - (1 - t * r) * s) % n:
        raise ConstraintViolation(f"s^2 != (1-tr)s mod {n} for t={t}, s={s}, r={r}")
    vinv = pow(v, -1, n)
    # internal index i <-> residue (i+1) mod n
    def res(i):
        return (i + 1) % n

    def idx(a):
        return (a - 1) % n

    return birack_from_maps(
        n,
        lambda x, y: (idx(t * res(y) + s * res(x)), idx(r * res(x))),
        lambda x, y: (idx(v * res(y)), idx(vinv * res(x))),
    )


def vtsr_tables(n, v, t, s, r):
    """Printed tables of the ``(v,t,s,r)`` formulas, without any validation."""
    vinv = pow(v, -1, n) if _unit(v, n) else 0

    def el(a):
        return (a - 1) % n + 1

    B1 = [[el(t * j + s * i) for i in range(1, n + 1)] for j in range(1, n + 1)]
    B2 = [[el(r * i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    V1 = [[el(v * j) for i in range(1, n + 1)] for j in range(1, n + 1)]
    V2 = [[el(vinv * i) for j in range(1, n + 1)] for i in range(1, n + 1)]
    return B1, B2, V1, V2


def _perm0(p, n=None):
    p = [int(v) - 1 for v in p]
    if n is not None and len(p) != n:
        raise DimensionMismatch(f"permutation must have {n} entries")
    if not _is_perm(p, len(p)):
        raise ConstraintViolation(f"{[v + 1 for v in p]} is not a permutation")
    return p


def constant_action_birack(sigma, tau, nu) -> FiniteBirack:
    """``B(x,y) = (tau(y), sigma(x))``, ``V(x,y) = (nu(y), nu^-1(x))``; 1-indexed image lists."""
    n = len(sigma)
    s, t, v = (_perm0(p, n) for p in (sigma, tau, nu))
    for (na, a), (nb, b) in itertools.combinations((("sigma", s), ("tau", t), ("nu", v)), 2):
        if any(a[b[x]] != b[a[x]] for x in range(n)):
            raise ConstraintViolation(f"{na} and {nb} do not commute")
    vinv = [0] * n
    for x, img in enumerate(v):
        vinv[img] = x
    return birack_from_maps(n, lambda x, y: (t[y], s[x]), lambda x, y: (v[y], vinv[x]))


@dataclass(frozen=True, eq=False)
class TwistedBirack:
    """A virtual birack together with a compatible twist involution ``T``."""

    base: FiniteBirack
    T: tuple[int, ...]

    twisted = True

    def __eq__(self, other):
        return isinstance(other, TwistedBirack) and (self.base, self.T) == (other.base, other.T)

    def __hash__(self):
        return hash((self.base, self.T))

    @property
    def birack(self) -> FiniteBirack:
        return self.base

    @property
    def n(self):
        return self.base.n

    @property
    def kink(self):
        return self.base.kink

    @property
    def rank(self):
        return self.base.rank

    def validate(self):
        b, T, n = self.base, self.T, self.base.n
        if len(T) != n or not _is_perm(T, n):
            raise AxiomViolation("T permutation")
        for x in range(n):
            if T[T[x]] != x:
                raise AxiomViolation("T involution", (x + 1,))
        V, B = b.V, b.B
        for x, y in itertools.product(range(n), repeat=2):
            a, c = V[x][y]
            if (T[a], c) != V[x][T[y]]:
                raise AxiomViolation("(T x Id)V = V(Id x T)", (x + 1, y + 1))
            if (a, T[c]) != V[T[x]][y]:
                raise AxiomViolation("(Id x T)V = V(T x Id)", (x + 1, y + 1))
        for x, y in itertools.product(range(n), repeat=2):
            a, c = B[T[x]][T[y]]
            lhs = (T[a], T[c])
            p, q = V[x][y]
            p, q = B[p][q]
            rhs = V[p][q]
            if lhs != rhs:
                raise AxiomViolation("(T x T)B(T x T) = VBV", (x + 1, y + 1))
        return self


def attach_twist(b: FiniteBirack, T) -> TwistedBirack:
    T = tuple(int(v) - 1 for v in T)
    if len(T) != b.n:
        raise DimensionMismatch(f"T must have {b.n} entries")
    return TwistedBirack(b, T).validate()


@dataclass(frozen=True, eq=False)
class ShadowAction:
    """Right action of a birack on a finite set of region labels.

    ``table[A][x]`` is ``A . x``; ``inv[A][x]`` is ``A .^-1 x``.
    """

    birack: object  # FiniteBirack or TwistedBirack
    m: int
    table: tuple

    def __eq__(self, other):
        return isinstance(other, ShadowAction) and (self.birack, self.m, self.table) == (
            other.birack, other.m, other.table)

    def __hash__(self):
        return hash((self.m, self.table))

    def act(self, A, x):
        return self.table[A][x]

    @cached_property
    def inv(self):
        n = self.birack.n
        inv = [[0] * n for _ in range(self.m)]
        for A in range(self.m):
            for x in range(n):
                inv[self.table[A][x]][x] = A
        return tuple(tuple(r) for r in inv)

    def act_inv(self, A, x):
        return self.inv[A][x]

    def printed(self):
        return [[v + 1 for v in row] for row in self.table]

    def validate(self):
        b = self.birack.birack
        n, m, tab = b.n, self.m, self.table
        for x in range(n):
            if not _is_perm([tab[A][x] for A in range(m)], m):
                raise AxiomViolation("right invertibility", (x + 1,), "column is not a permutation")
        pi = b.kink.pi
        for x in range(n):
            for A in range(m):
                if tab[A][x] != tab[A][pi[x]]:
                    raise AxiomViolation("kink column", (A + 1, x + 1))
        for A, x, y in itertools.product(range(m), range(n), range(n)):
            direct = tab[tab[A][x]][y]
            classical = tab[tab[A][b.down(y, x)]][b.up(y, x)]
            virtual = tab[tab[A][b.vdown(y, x)]][b.vup(y, x)]
            if classical != direct or virtual != direct:
                raise AxiomViolation("shadow axiom", (A + 1, x + 1, y + 1))
        if self.birack.twisted:
            T = self.birack.T
            for A, x in itertools.product(range(m), range(n)):
                if tab[A][T[x]] != tab[A][x]:
                    raise AxiomViolation("twisted shadow A.Tx = A.x", (A + 1, x + 1))
        return self


def shadow_from_table(b, table) -> ShadowAction:
    m = len(table)
    n = b.n
    if m < 1 or any(len(row) != n for row in table):
        raise DimensionMismatch(f"shadow table must be m x {n}")
    for row in table:
        for v in row:
            if not (isinstance(v, int) and 1 <= v <= m):
                raise DimensionMismatch(f"shadow entry {v!r} outside 1..{m}")
    tab = tuple(tuple(v - 1 for v in row) for row in table)
    return ShadowAction(b, m, tab).validate()


def trivial_shadow(b) -> ShadowAction:
    return shadow_from_table(b, [[1] * b.n])
