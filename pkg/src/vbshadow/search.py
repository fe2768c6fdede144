"""Exhaustive and randomized discovery of biracks, twist maps and modules.

Randomness comes from :class:`random.Random` (Mersenne Twister MT19937)
seeded with the given integer, so a report is fixed by its parameters.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .algebra import FiniteBirack, _is_perm, _sideways, attach_twist
from .errors import AxiomViolation, DimensionMismatch, SizeGuard, VBShadowError
from .module import ModuleSpec, relation_instances


@dataclass
class SearchReport:
    parameters: dict
    found: list = field(default_factory=list)
    trials: int = 0
    rejects: Counter = field(default_factory=Counter)

    def summary(self) -> str:
        lines = [", ".join(f"{k}={v}" for k, v in self.parameters.items()),
                 f"trials: {self.trials}", f"found: {len(self.found)}"]
        for fam, c in sorted(self.rejects.items()):
            lines.append(f"rejected by {fam}: {c}")
        return "\n".join(lines)


# -- twists


def involutions(n):
    """All involutions of ``range(n)`` as tuples, in lexicographic order."""
    return [p for p in itertools.permutations(range(n)) if all(p[p[i]] == i for i in range(n))]


def enumerate_twists(b: FiniteBirack) -> SearchReport:
    b = b.birack
    rep = SearchReport({"n": b.n})
    for T in involutions(b.n):
        rep.trials += 1
        try:
            rep.found.append(attach_twist(b, [v + 1 for v in T]))
        except AxiomViolation as e:
            rep.rejects[e.axiom] += 1
    return rep


# -- biracks


def _pair_perms(n):
    pairs = list(itertools.product(range(n), repeat=2))
    for img in itertools.permutations(pairs):
        yield tuple(tuple(img[x * n + y] for y in range(n)) for x in range(n))


def _ybe(F, G, H, n):
    for x, y, z in itertools.product(range(n), repeat=3):
        a, b = F[x][y]
        c, d = G[b][z]
        e, f = H[a][c]
        u, v = H[y][z]
        p, w = G[x][u]
        g, h = F[w][v]
        if (e, f, d) != (p, g, h):
            return False
    return True


def _b_ok(B, n):
    try:
        S, S_inv = _sideways(B, n, "sideways")
    except AxiomViolation:
        return False
    for fn in (S, S_inv):
        diag = [fn[(x, x)] for x in range(n)]
        if not (_is_perm([d[0] for d in diag], n) and _is_perm([d[1] for d in diag], n)):
            return False
    return _ybe(B, B, B, n)


def _v_ok(V, n):
    if any(V[V[x][y][0]][V[x][y][1]] != (x, y) for x in range(n) for y in range(n)):
        return False
    try:
        vS, _ = _sideways(V, n, "sideways")
    except AxiomViolation:
        return False
    if any(vS[(x, x)][0] != vS[(x, x)][1] for x in range(n)):
        return False
    return _ybe(V, V, V, n)


def enumerate_biracks(n: int, allow_large: bool = False) -> SearchReport:
    """Every virtual birack on ``n`` elements (raw tables, no identification)."""
    if n < 1:
        raise DimensionMismatch("n must be positive")
    if n > 3 and not allow_large:
        raise SizeGuard(f"n={n} is beyond the exhaustive range (n <= 3)")
    rep = SearchReport({"n": n})
    Bs = [B for B in _pair_perms(n) if _b_ok(B, n)]
    Vs = [V for V in _pair_perms(n) if _v_ok(V, n)]
    for B, V in itertools.product(Bs, Vs):
        rep.trials += 1
        try:
            rep.found.append(FiniteBirack(n, B, V).validate())
        except AxiomViolation as e:
            rep.rejects[e.axiom] += 1
    return rep


# -- modules


def _variables(b, shadow, q):
    m, n = shadow.m, b.n
    names = ("v", "t", "r", "q") if b.twisted else ("v", "t", "s", "r")
    units = [a for a in range(q) if gcd(a, q) == 1]
    out = []
    for A, x in itertools.product(range(m), range(n)):
        for name in names:
            if name == "q":
                out.append((("q", A, x, None), units))
                continue
            for y in range(n):
                out.append(((name, A, x, y), list(range(q)) if name == "s" else units))
    return out


def _order_variables(variables, keysets):
    """Greedy order that completes relation instances as early as possible."""
    domains = dict(variables)
    remaining = [set(ks) for ks in keysets]
    touching = {key: [i for i, ks in enumerate(keysets) if key in ks] for key in domains}
    order = []
    left = [key for key, _ in variables]
    while left:
        def score(key):
            done = sum(1 for i in touching[key] if remaining[i] == {key})
            near = sum(1.0 / len(remaining[i]) for i in touching[key])
            return (done, near, -left.index(key))
        best = max(left, key=score)
        left.remove(best)
        order.append((best, domains[best]))
        for i in touching[best]:
            remaining[i].discard(best)
    return order


def _spec_from(b, shadow, q, vals):
    m, n = shadow.m, b.n

    def ten(name):
        return tuple(tuple(tuple(vals.get((name, A, x, y), 0) for y in range(n)) for x in range(n))
                     for A in range(m))

    qc = tuple(tuple(vals[("q", A, x, None)] for x in range(n)) for A in range(m)) if b.twisted else None
    return ModuleSpec(b, shadow, q, ten("v"), ten("t"), ten("s"), ten("r"), qc)


def random_modules(b, shadow, q: int, trials: int, seed: int, budget: int = 100000,
                   all_ones_first: bool = False) -> SearchReport:
    """Randomized backtracking for module structures on ``Z_q``.

    Each trial walks the coefficients in a fixed order, trying values in a
    freshly shuffled order and checking every relation as soon as all of
    its coefficients are set; it stops at the first complete structure or
    after ``budget`` assignments.  Distinct structures are reported in the
    order first found; every one is re-validated by ``ModuleSpec.validate``.
    """
    if q < 2:
        raise DimensionMismatch("q must be at least 2")
    rng = random.Random(seed)
    rep = SearchReport({"n": b.n, "m": shadow.m, "q": q, "trials": trials, "seed": seed})
    ctx = (b, shadow, q)
    insts = [(inst, {k for k in inst.keys(ctx) if k[0] != "s" or not b.twisted})
             for inst in relation_instances(b, shadow)]
    variables = _order_variables(_variables(b, shadow, q), [keys for _, keys in insts])
    index = {key: i for i, (key, _) in enumerate(variables)}
    checks = [[] for _ in variables]
    for inst, keys in insts:
        checks[max(index[k] for k in keys)].append(inst)
    seen = set()

    def record(vals):
        spec = _spec_from(b, shadow, q, vals).validate()
        if spec.key() not in seen:
            seen.add(spec.key())
            rep.found.append(spec)

    if all_ones_first:
        rep.trials += 1
        record({key: 0 if key[0] == "s" else 1 for key, _ in variables})

    for _ in range(trials):
        rep.trials += 1
        vals = {}
        steps = [0]

        def coef(name, A, x, y):
            return vals.get((name, A, x, y), 0)

        def descend(i):
            if i == len(variables):
                return True
            key, domain = variables[i]
            order = list(domain)
            rng.shuffle(order)
            for val in order:
                if steps[0] >= budget:
                    return False
                steps[0] += 1
                vals[key] = val
                bad = next((inst for inst in checks[i] if inst.failure(ctx, coef) is not None), None)
                if bad is not None:
                    rep.rejects[bad.family] += 1
                    continue
                if descend(i + 1):
                    return True
            del vals[key]
            return False

        if descend(0):
            record(vals)
        else:
            rep.rejects["budget exhausted"] += 1
    return rep


def check_report(rep: SearchReport):
    """Re-run the authoritative validators on every found structure."""
    for item in rep.found:
        try:
            item.validate()
        except VBShadowError:
            return False
    return True
