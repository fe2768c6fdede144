"""Shadow modules over Z_q and the enhanced invariants built from them.

Bead rules at a node, with the coefficient index ``(A, x, y)`` where ``x``,
``y`` are the labels of the left and right input and ``A`` labels the region
on the right of the node (right of the right-hand strands):

* positive classical (``x`` over): ``c = t b + s a`` and ``d = r a`` for
  inputs ``a`` (left), ``b`` (right) and outputs ``c`` (left), ``d`` (right);
* negative classical: the same rule applied against the flow, outputs
  playing the part of inputs;
* virtual: ``c = v b`` and ``d = v^-1 a``;
* twist bar on a strand labeled ``x``: ``out = q_{A,x} in`` with ``A`` the
  region on the right of the strand.
"""

from __future__ import annotations

import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from collections import Counter
from dataclasses import dataclass, field
from math import gcd

from .errors import DimensionMismatch, NonUnit, ParseError, RelationViolation
from .kernel import ModuleDescriptor, kernel_descriptor, solution_count as _count
from .labeling import enumerate_shadow_labelings, framings


@dataclass(frozen=True, eq=False)
class ModuleSpec:
    """Coefficient tensors of a shadow module on ``Z_q``; all 0-indexed ``[A][x][y]``."""

    birack: object
    shadow: object
    q: int
    v: tuple
    t: tuple
    s: tuple
    r: tuple
    qcoef: tuple | None = None

    @property
    def twisted(self):
        return self.qcoef is not None

    @property
    def m(self):
        return self.shadow.m

    @property
    def n(self):
        return self.birack.n

    def __eq__(self, other):
        return isinstance(other, ModuleSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self):
        return (self.q, self.v, self.t, self.s, self.r, self.qcoef)

    def inv(self, a):
        return pow(a, -1, self.q)

    def blocks(self):
        """Printed block rows (one per shadow element), values in 0..q-1."""
        rows = []
        n = self.n
        for A in range(self.m):
            for x in range(n):
                row = list(self.v[A][x]) + list(self.t[A][x])
                if self.twisted:
                    row += list(self.r[A][x]) + [self.qcoef[A][x]]
                else:
                    row += list(self.s[A][x]) + list(self.r[A][x])
                rows.append(row)
        return rows

    def validate(self):
        check_units(self)
        for inst, entry in relation_failures(self, first_only=True):
            raise RelationViolation(f"{inst.family} ({entry})", inst.witness)
        return self

    def coef(self, name, A, x, y):
        if name == "q":
            return self.qcoef[A][x]
        return getattr(self, name)[A][x][y]


def check_units(spec):
    q = spec.q
    tensors = [("v", spec.v), ("t", spec.t), ("r", spec.r)]
    for name, ten in tensors:
        for A, x, y in itertools.product(range(spec.m), range(spec.n), range(spec.n)):
            val = ten[A][x][y]
            if gcd(val, q) != 1:
                raise NonUnit(name, (A + 1, x + 1, y + 1), val, q)
    if spec.twisted:
        for A, x in itertools.product(range(spec.m), range(spec.n)):
            if gcd(spec.qcoef[A][x], q) != 1:
                raise NonUnit("q", (A + 1, x + 1), spec.qcoef[A][x], q)
        for A, x, y in itertools.product(range(spec.m), range(spec.n), range(spec.n)):
            if spec.s[A][x][y] % q:
                raise RelationViolation("twisted requires s = 0", (A + 1, x + 1, y + 1))


def _tensor(rows, m, n, q, width, offset):
    return tuple(
        tuple(tuple(rows[A * n + x][offset + y] % q for y in range(width)) for x in range(n))
        for A in range(m))


def module_from_blocks(b, shadow, q, blocks) -> ModuleSpec:
    """Validated module from the printed ``(m n) x 4n`` block matrix.

    Untwisted rows read ``V | T | S | R``; twisted rows read ``V | T | R | Q``
    with a single ``Q`` column.
    """
    m, n = shadow.m, b.n
    twisted = getattr(b, "twisted", False)
    width = 3 * n + 1 if twisted else 4 * n
    if len(blocks) != m * n or any(len(row) != width for row in blocks):
        raise DimensionMismatch(f"module matrix must be {m * n} x {width}")
    v = _tensor(blocks, m, n, q, n, 0)
    t = _tensor(blocks, m, n, q, n, n)
    if twisted:
        r = _tensor(blocks, m, n, q, n, 2 * n)
        s = tuple(tuple((0,) * n for _ in range(n)) for _ in range(m))
        qc = tuple(tuple(blocks[A * n + x][3 * n] % q for x in range(n)) for A in range(m))
    else:
        s = _tensor(blocks, m, n, q, n, 2 * n)
        r = _tensor(blocks, m, n, q, n, 3 * n)
        qc = None
    return ModuleSpec(b, shadow, q, v, t, s, r, qc).validate()


def constant_module(b, shadow, q, v=1, t=1, s=0, r=1, qv=1) -> ModuleSpec:
    m, n = shadow.m, b.n

    def const(c):
        return tuple(tuple((c % q,) * n for _ in range(n)) for _ in range(m))

    qc = tuple((qv % q,) * n for _ in range(m)) if getattr(b, "twisted", False) else None
    return ModuleSpec(b, shadow, q, const(v), const(t), const(0 if qc else s), const(r), qc).validate()


# ---------------------------------------------------------------------------
# Relations: every framed move must give equal bead transfer maps.


class _Strands:
    """Labels and bead transfer rows for a braid-like tangle read bottom to top.

    ``A`` labels the region on the far right.  Beads are linear forms in the
    input beads, stored as coefficient lists over Z_q.  ``coef(name, R, x, y)``
    supplies coefficient values (``y`` is None for ``q``).
    """

    def __init__(self, ctx, coef, A, labels):
        self.b, self.shadow, self.q = ctx
        self.coef = coef
        self.A = A
        self.labels = list(labels)
        k = len(labels)
        self.beads = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def region_right_of(self, i):
        R = self.A
        for j in range(len(self.labels) - 1, i, -1):
            R = self.shadow.act(R, self.labels[j])
        return R

    def _lin(self, *terms):
        q = self.q
        out = [0] * len(self.beads)
        for c, vec in terms:
            for j, val in enumerate(vec):
                out[j] = (out[j] + c * val) % q
        return out

    def B(self, i):
        R = self.region_right_of(i + 1)
        x, y = self.labels[i], self.labels[i + 1]
        a, b = self.beads[i], self.beads[i + 1]
        c = self.coef
        self.beads[i] = self._lin((c("t", R, x, y), b), (c("s", R, x, y), a))
        self.beads[i + 1] = self._lin((c("r", R, x, y), a))
        self.labels[i], self.labels[i + 1] = self.b.birack.B[x][y]
        return self

    def V(self, i):
        R = self.region_right_of(i + 1)
        x, y = self.labels[i], self.labels[i + 1]
        a, b = self.beads[i], self.beads[i + 1]
        v = self.coef("v", R, x, y)
        self.beads[i] = self._lin((v, b))
        self.beads[i + 1] = self._lin((pow(v, -1, self.q) if gcd(v, self.q) == 1 else 0, a))
        self.labels[i], self.labels[i + 1] = self.b.birack.V[x][y]
        return self

    def T(self, i):
        R = self.region_right_of(i)
        x = self.labels[i]
        self.beads[i] = self._lin((self.coef("q", R, x, None), self.beads[i]))
        self.labels[i] = self.b.T[x]
        return self

    def run(self, word):
        for op, i in word:
            getattr(self, op)(i)
        return self


# (family, strand count, left word, right word); words apply left to right
_MOVES = [
    ("vII", 2, [("V", 0), ("V", 0)], []),
    ("vIII", 3, [("V", 0), ("V", 1), ("V", 0)], [("V", 1), ("V", 0), ("V", 1)]),
    ("v", 3, [("B", 1), ("V", 0), ("V", 1)], [("V", 0), ("V", 1), ("B", 0)]),
    ("III", 3, [("B", 0), ("B", 1), ("B", 0)], [("B", 1), ("B", 0), ("B", 1)]),
]

_TWIST_MOVES = [
    ("t involution", 1, [("T", 0), ("T", 0)], []),
    ("t past virtual (left)", 2, [("T", 0), ("V", 0)], [("V", 0), ("T", 1)]),
    ("t past virtual (right)", 2, [("T", 1), ("V", 0)], [("V", 0), ("T", 0)]),
    ("tv", 2, [("V", 0), ("B", 0), ("V", 0)], [("T", 0), ("T", 1), ("B", 0), ("T", 0), ("T", 1)]),
]


@dataclass(frozen=True)
class RelationInstance:
    """One generator family instantiated at a shadow label ``A`` and birack labels."""

    family: str
    A: int
    labels: tuple[int, ...]
    left: tuple = ()
    right: tuple = ()

    @property
    def witness(self):
        return (self.A + 1, *(x + 1 for x in self.labels))

    def failure(self, ctx, coef):
        """None if the relation holds, else a short description of the failing entry."""
        b, shadow, q = ctx
        if self.family == "N-phone cord":
            return None if _phone_cord(ctx, coef, self.A, self.labels[0]) == 1 else "product != 1"
        L = _Strands(ctx, coef, self.A, self.labels).run(self.left)
        R = _Strands(ctx, coef, self.A, self.labels).run(self.right)
        if L.labels != R.labels:
            raise AssertionError(f"birack axiom broken in move {self.family} at {self.labels}")
        for i, (u, w) in enumerate(zip(L.beads, R.beads)):
            if u != w:
                return f"strand {i + 1}"
        return None

    def keys(self, ctx):
        """Coefficients this relation reads, as ``(name, A, x, y)`` keys."""
        seen = []

        def record(name, A, x, y):
            key = (name, A, x, y)
            if key not in seen:
                seen.append(key)
            return 1

        self.failure(ctx, record)
        return tuple(seen)


def _phone_cord(ctx, coef, A, x):
    """Product over one period of curls of the ``t r + s`` factors for a strand labeled x.

    ``A`` labels the region on the right of the cord and stays fixed; the
    k-th monogon is labeled ``A .^-1 alpha(pi^k x)``.
    """
    b, shadow, q = ctx
    kink = b.birack.kink
    prod = 1
    cur = x
    for _ in range(kink.N):
        a = kink.alpha[cur]
        R = shadow.act_inv(A, a)
        prod = prod * (coef("t", R, cur, a) * coef("r", R, cur, a) + coef("s", R, cur, a)) % q
        cur = kink.pi[cur]
    return prod


def relation_instances(b, shadow) -> list[RelationInstance]:
    """Every relation instance, families in a fixed order, each in lexicographic order."""
    m, n = shadow.m, b.n
    out = [RelationInstance("N-phone cord", A, (x,)) for A, x in itertools.product(range(m), range(n))]
    moves = list(_MOVES) + (list(_TWIST_MOVES) if b.twisted else [])
    for family, k, left, right in moves:
        for A, lab in itertools.product(range(m), itertools.product(range(n), repeat=k)):
            out.append(RelationInstance(family, A, lab, tuple(left), tuple(right)))
    return out


def relation_failures(spec, first_only=False):
    """Yield ``(instance, entry)`` for each failing relation instance."""
    ctx = (spec.birack, spec.shadow, spec.q)
    for inst in relation_instances(spec.birack, spec.shadow):
        bad = inst.failure(ctx, spec.coef)
        if bad is not None:
            yield inst, bad
            if first_only:
                return


# ---------------------------------------------------------------------------
# Presentation matrices of labelings


@dataclass(frozen=True)
class PresentationMatrix:
    q: int
    edges: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]
    symbolic: tuple[tuple[str, ...], ...]
    provenance: tuple[tuple[int, int], ...]  # (node index + 1, relation index)

    @property
    def ncols(self):
        return len(self.edges)


def _coef_name(name, A, x, y=None, inverse=False):
    idx = f"{A + 1},{x + 1}" + (f",{y + 1}" if y is not None else "")
    return f"{name}[{idx}]" + ("^-1" if inverse else "")


def presentation_matrix(d, sl, spec) -> PresentationMatrix:
    """Bead relations of a shadow labeling ``sl`` of diagram ``d``."""
    q = spec.q
    edges = d.edges
    col = {e: i for i, e in enumerate(edges)}
    lab = sl.x.as_dict
    face_of = d.regions.face_of
    rows, sym, prov = [], [], []

    def emit(k, idx, terms):
        row = [0] * len(edges)
        srow = [[] for _ in edges]
        for coef, name, e in terms:
            row[col[e]] = (row[col[e]] + coef) % q
            srow[col[e]].append(name)
        rows.append(tuple(row))
        sym.append(tuple("+".join(s) if s else "0" for s in srow))
        prov.append((k + 1, idx))

    for k, node in enumerate(d.nodes):
        ends = node.ends
        if node.kind == "T":
            e_in, e_out = ends
            R = sl.regions[face_of[(e_in, "R")]]
            x = lab[e_in]
            emit(k, 1, [(spec.qcoef[R][x], _coef_name("q", R, x), e_in), (-1, "-1", e_out)])
            continue
        side = d.side(k)
        li, ri, lo, ro = (ends[p] for p in (side.left_in, side.right_in, side.left_out, side.right_out))
        if node.kind == "X-":
            # read against the flow: outputs act as the template inputs
            li, ri, lo, ro = lo, ro, li, ri
        R = sl.regions[face_of[(ri, "R")]]
        x, y = lab[li], lab[ri]
        if node.kind == "V":
            v = spec.v[R][x][y]
            emit(k, 1, [(v, _coef_name("v", R, x, y), ri), (-1, "-1", lo)])
            emit(k, 2, [(spec.inv(v), _coef_name("v", R, x, y, True), li), (-1, "-1", ro)])
        else:
            emit(k, 1, [(spec.t[R][x][y], _coef_name("t", R, x, y), ri),
                        (spec.s[R][x][y], _coef_name("s", R, x, y), li), (-1, "-1", lo)])
            emit(k, 2, [(spec.r[R][x][y], _coef_name("r", R, x, y), li), (-1, "-1", ro)])
    return PresentationMatrix(q, edges, tuple(rows), tuple(sym), tuple(prov))


def solution_count(M: PresentationMatrix) -> int:
    return _count(M.rows, M.ncols, M.q)


def module_descriptor(M: PresentationMatrix) -> ModuleDescriptor:
    return kernel_descriptor(M.rows, M.ncols, M.q)


# ---------------------------------------------------------------------------
# Invariant polynomials


@dataclass(frozen=True)
class InvariantPolynomial:
    """``sum of c_k u^k`` stored as ``{exponent: multiplicity}``."""

    terms: tuple[tuple[int, int], ...]

    @classmethod
    def from_counts(cls, exps):
        return cls(tuple(sorted(Counter(exps).items())))

    @classmethod
    def parse(cls, text):
        terms = Counter()
        text = text.replace(" ", "")
        if text in ("", "0"):
            return cls(())
        for tok in text.split("+"):
            m = re.fullmatch(r"(\d*)(u(?:\^\{?(\d+)\}?)?)?", tok)
            if not m or not tok:
                raise ParseError(f"bad polynomial term {tok!r}")
            coef = int(m.group(1)) if m.group(1) else 1
            if m.group(2) is None:
                exp = 0
            else:
                exp = int(m.group(3)) if m.group(3) else 1
            terms[exp] += coef
        return cls(tuple(sorted(terms.items())))

    @property
    def as_dict(self):
        return dict(self.terms)

    def total(self):
        return sum(c for _, c in self.terms)

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for exp, c in self.terms:
            coef = "" if c == 1 and exp != 0 else str(c)
            if exp == 0:
                parts.append(str(c))
            elif exp == 1:
                parts.append(f"{coef}u")
            else:
                parts.append(f"{coef}u^{exp}")
        return "+".join(parts)


@dataclass(frozen=True)
class LabelingRecord:
    framing: tuple[int, ...]
    labels: dict = field(hash=False)
    regions: tuple[int, ...]
    descriptor: ModuleDescriptor


def _records_for(d, spec):
    out = []
    for sl in enumerate_shadow_labelings(d, spec.birack, spec.shadow):
        M = presentation_matrix(d, sl, spec)
        out.append((sl, module_descriptor(M)))
    return out


def _records_job(d, spec):
    return [(sl.x.printed(), sl.regions, desc) for sl, desc in _records_for(d, spec)]


def _tile(d, spec, jobs):
    ws = framings(d.n_components, spec.birack.rank)
    ds = [d.add_kinks(w) for w in ws]
    if jobs and jobs > 1 and len(ds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            res = list(pool.map(_records_job, ds, [spec] * len(ds)))
    else:
        res = [_records_job(dd, spec) for dd in ds]
    return list(zip(ws, res))


def phi_module_records(d, spec, jobs=1) -> list[LabelingRecord]:
    out = []
    for w, recs in _tile(d, spec, jobs):
        for labels, regions, desc in recs:
            out.append(LabelingRecord(w, labels, regions, desc))
    return out


def phi_module_poly(d, spec, jobs=1) -> InvariantPolynomial:
    return InvariantPolynomial.from_counts(r.descriptor.count for r in phi_module_records(d, spec, jobs))


def phi_module_multiset(d, spec, jobs=1) -> Counter:
    return Counter(r.descriptor for r in phi_module_records(d, spec, jobs))
