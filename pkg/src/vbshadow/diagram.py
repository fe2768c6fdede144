"""Oriented virtual link diagrams with twist bars, in an extended PD code.

Node lines::

    X+ a b c d    positive classical crossing
    X- a b c d    negative classical crossing
    V  a b c d    virtual crossing
    T  a b        twist bar from semiarc a to semiarc b
    O  e          crossingless circle made of the single semiarc e

Crossing ends are listed counterclockwise.  For ``X+``/``X-`` the list starts
at the incoming under end, so ``c`` is the outgoing under end; the incoming
over end is ``d`` for ``X+`` and ``b`` for ``X-``.  For ``V`` the end ``a``
is incoming and ``c`` continues it.  Whether ``b`` or ``d`` is incoming at a
virtual crossing is read off the rest of the diagram; if nothing forces it,
``b`` is taken as incoming (the printer always emits that form).
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property

from .errors import EdgeMultiplicity, MalformedCode, NonPlanar, OrientationConflict

IN, OUT = "in", "out"
CROSSING_KINDS = ("X+", "X-", "V")


@dataclass(frozen=True)
class Node:
    kind: str  # "X+", "X-", "V" or "T"
    ends: tuple[int, ...]

    @property
    def is_crossing(self):
        return self.kind in CROSSING_KINDS

    @property
    def sign(self):
        return {"X+": 1, "X-": -1}.get(self.kind, 0)

    def line(self):
        return " ".join([self.kind, *map(str, self.ends)])


# fixed end directions of classical crossings, by position
_FIXED = {
    "X+": (IN, OUT, OUT, IN),
    "X-": (IN, IN, OUT, OUT),
}


@dataclass(frozen=True)
class Side:
    """Where a 4-valent node's strands enter and leave, as end positions."""

    left_in: int
    right_in: int
    right_out: int  # continues left_in
    left_out: int  # continues right_in


@dataclass(frozen=True)
class RegionMap:
    """Faces as cyclic sequences of ``(edge, side)``; side is ``"L"`` or ``"R"``
    relative to the edge's orientation.  Face 0 is the shared outer face."""

    faces: tuple[tuple[tuple[int, str], ...], ...]

    @cached_property
    def face_of(self) -> dict:
        return {dart: i for i, face in enumerate(self.faces) for dart in face}

    def __len__(self):
        return len(self.faces)


class Diagram:
    """A validated oriented diagram.  Treat instances as immutable."""

    def __init__(self, nodes, loops=(), expected_components=None):
        self.nodes = tuple(nodes)
        self.loops = tuple(sorted(loops))
        self._orient()
        self._trace_components()
        if expected_components is not None and expected_components != len(self.components):
            raise MalformedCode(
                f"header says {expected_components} components, code has {len(self.components)}")

    # -- construction helpers
    def _orient(self):
        where = defaultdict(list)
        for k, node in enumerate(self.nodes):
            want = 4 if node.is_crossing else 2
            if node.kind not in (*CROSSING_KINDS, "T") or len(node.ends) != want:
                raise MalformedCode(f"bad node {node.line()!r}")
            for p, e in enumerate(node.ends):
                if not (isinstance(e, int) and e > 0):
                    raise MalformedCode(f"edge ids must be positive integers, got {e!r}")
                where[e].append((k, p))
        for e in self.loops:
            if e in where:
                raise EdgeMultiplicity(e, "free loop edge also used at a node")
        if len(set(self.loops)) != len(self.loops):
            raise EdgeMultiplicity(self.loops[0], "repeated free loop")
        for e, ends in where.items():
            if len(ends) != 2:
                raise EdgeMultiplicity(e, f"appears {len(ends)} times")
        direction = {}
        for k, node in enumerate(self.nodes):
            if node.kind in _FIXED:
                for p, d in enumerate(_FIXED[node.kind]):
                    direction[(k, p)] = d
            elif node.kind == "V":
                direction[(k, 0)], direction[(k, 2)] = IN, OUT
            else:
                direction[(k, 0)], direction[(k, 1)] = IN, OUT

        def other_end(k, p):
            e = self.nodes[k].ends[p]
            a, b = where[e]
            return b if a == (k, p) else a

        def assign(k, p, d):
            # set one end, then push the consequences along edges and virtual strands
            stack = [(k, p, d)]
            while stack:
                k, p, d = stack.pop()
                if (k, p) in direction:
                    if direction[(k, p)] != d:
                        raise OrientationConflict(k + 1, f"end {p + 1} of {self.nodes[k].line()!r}")
                    continue
                direction[(k, p)] = d
                flip = OUT if d == IN else IN
                stack.append((*other_end(k, p), flip))
                if self.nodes[k].kind == "V":
                    stack.append((k, 4 - p, flip))

        for e, (u, w) in sorted(where.items()):
            du, dw = direction.get(u), direction.get(w)
            if du is not None and dw is not None and du == dw:
                raise EdgeMultiplicity(e, "is a head twice" if du == IN else "is a tail twice")
        # propagate from fixed ends
        for k, node in enumerate(self.nodes):
            for p in range(len(node.ends)):
                d = direction.get((k, p))
                if d is not None:
                    u = other_end(k, p)
                    flip = OUT if d == IN else IN
                    if u in direction:
                        if direction[u] != flip:
                            e = node.ends[p]
                            raise EdgeMultiplicity(e, "is a head twice" if d == IN else "is a tail twice")
                    else:
                        assign(*u, flip)
        for k, node in enumerate(self.nodes):
            if node.kind == "V" and (k, 1) not in direction:
                assign(k, 1, IN)
        for k, node in enumerate(self.nodes):
            if node.kind == "V" and direction[(k, 1)] == direction[(k, 3)]:
                raise OrientationConflict(k + 1, "b and d point the same way")
        self.direction = direction
        self._where = dict(where)
        tail, head = {}, {}
        for e, ends in where.items():
            for end in ends:
                (tail if direction[end] == OUT else head)[e] = end
        self.tail, self.head = tail, head

    def side(self, k) -> Side:
        """Entry/exit positions at crossing ``k``."""
        node = self.nodes[k]
        for L in range(4):
            if self.direction[(k, L)] == IN and self.direction[(k, (L + 1) % 4)] == IN:
                return Side(L, (L + 1) % 4, (L + 2) % 4, (L + 3) % 4)
        raise OrientationConflict(k + 1, f"{node.line()!r} has no adjacent inputs")

    def continuation(self, k, p):
        """Outgoing end position continuing the strand that enters at ``(k, p)``."""
        node = self.nodes[k]
        if node.kind == "T":
            return 1
        s = self.side(k)
        return s.right_out if p == s.left_in else s.left_out

    def _trace_components(self):
        seen = set()
        comps = []
        for e in sorted(self.edges):
            if e in seen:
                continue
            if e in self.loops:
                seen.add(e)
                comps.append((e,))
                continue
            cyc = []
            cur = e
            while cur not in seen:
                seen.add(cur)
                cyc.append(cur)
                k, p = self.head[cur]
                cur = self.nodes[k].ends[self.continuation(k, p)]
            if cur != e:
                raise MalformedCode(f"strand through edge {e} does not close up")
            comps.append(tuple(cyc))
        self.components = tuple(comps)
        self.component_of = {e: i for i, c in enumerate(comps) for e in c}

    # -- basic queries
    @cached_property
    def edges(self) -> tuple[int, ...]:
        es = {e for node in self.nodes for e in node.ends} | set(self.loops)
        return tuple(sorted(es))

    @property
    def n_components(self):
        return len(self.components)

    def crossings(self):
        return [k for k, node in enumerate(self.nodes) if node.is_crossing]

    @cached_property
    def canonical(self) -> str:
        return format_diagram(self)

    def __eq__(self, other):
        return isinstance(other, Diagram) and self.canonical == other.canonical

    def __hash__(self):
        return hash(self.canonical)

    def __repr__(self):
        return f"Diagram({format_diagram(self)!r})"

    # -- surgery
    def writhe_vector(self):
        w = [0] * self.n_components
        for k, node in enumerate(self.nodes):
            if node.sign:
                comps = {self.component_of[e] for e in node.ends}
                if len(comps) == 1:
                    w[comps.pop()] += node.sign
        return tuple(w)

    def add_kinks(self, w) -> "Diagram":
        """Insert ``w[i]`` positive curls on the lowest-numbered semiarc of component ``i``."""
        if len(w) != self.n_components:
            raise ValueError(f"framing vector needs {self.n_components} entries")
        if any(x < 0 for x in w):
            raise ValueError("kink counts must be non-negative")
        d = self
        for comp, count in zip(self.components, w):
            for _ in range(count):
                d = d._insert_curl(min(comp))
        return d

    def _insert_curl(self, e) -> "Diagram":
        # the strand runs over-in -> over-out -> (loop) -> under-in -> under-out
        nxt = max(self.edges) + 1
        loop_edge, out_edge = nxt, nxt + 1
        nodes = list(self.nodes)
        loops = set(self.loops)
        if e in loops:
            loops.discard(e)
            nodes.append(Node("X+", (loop_edge, loop_edge, e, e)))
            return Diagram(nodes, loops)
        k, p = self.head[e]
        ends = list(nodes[k].ends)
        ends[p] = out_edge
        nodes[k] = Node(nodes[k].kind, tuple(ends))
        nodes.append(Node("X+", (loop_edge, loop_edge, out_edge, e)))
        return Diagram(nodes, loops)

    def reverse_orientation(self) -> "Diagram":
        nodes = []
        for k, node in enumerate(self.nodes):
            a = node.ends
            if node.kind == "T":
                nodes.append(Node("T", (a[1], a[0])))
            elif node.kind == "V":
                s = self.side(k)
                # old outputs become inputs, still listed counterclockwise
                order = (s.right_out, s.left_out, s.left_in, s.right_in)
                nodes.append(Node("V", tuple(a[p] for p in order)))
            else:
                nodes.append(Node(node.kind, (a[2], a[3], a[0], a[1])))
        return Diagram(nodes, self.loops)

    def reverse_components(self, edges) -> "Diagram":
        """Reverse the components through the given edges, keeping the rest."""
        flip = {self.component_of[e] for e in edges}
        nodes = []
        for k, node in enumerate(self.nodes):
            a = node.ends
            rev = [self.component_of[e] in flip for e in a]
            if node.kind == "T":
                nodes.append(Node("T", (a[1], a[0]) if rev[0] else a))
                continue
            dirs = [self.direction[(k, p)] for p in range(4)]
            dirs = [(OUT if d == IN else IN) if r else d for d, r in zip(dirs, rev)]
            if node.kind == "V":
                start = dirs.index(IN)
                nodes.append(Node("V", a[start:] + a[:start]))
                continue
            start = 0 if dirs[0] == IN else 2  # the under strand's incoming end
            ends = a[start:] + a[:start]
            kind = "X+" if dirs[(start + 1) % 4] == OUT else "X-"
            nodes.append(Node(kind, ends))
        return Diagram(nodes, self.loops)

    # -- faces
    @cached_property
    def regions(self) -> RegionMap:
        return compute_faces(self)

    def faces(self) -> RegionMap:
        return self.regions

    def pieces(self):
        """Connected pieces as sets of edges."""
        parent = {e: e for e in self.edges}

        def find(e):
            while parent[e] != e:
                parent[e] = parent[parent[e]]
                e = parent[e]
            return e

        for node in self.nodes:
            r = find(node.ends[0])
            for e in node.ends[1:]:
                parent[find(e)] = r
        groups = defaultdict(set)
        for e in self.edges:
            groups[find(e)].add(e)
        return sorted((frozenset(g) for g in groups.values()), key=min)


def _dart_after(d: Diagram, edge, side):
    """Next dart on the face to the left of a walk along ``edge``.

    Walking with the face on the left: forward along the edge for side L,
    backward for side R.  At the arrival node turn to the clockwise-next end.
    """
    k, p = d.head[edge] if side == "L" else d.tail[edge]
    node = d.nodes[k]
    deg = len(node.ends)
    q = (p - 1) % deg
    nxt = node.ends[q]
    if d.direction[(k, q)] == OUT:
        return (nxt, "L")
    return (nxt, "R")


def compute_faces(d: Diagram) -> RegionMap:
    darts = [(e, s) for e in d.edges for s in ("L", "R")]
    seen = set()
    raw = []
    for dart in darts:
        if dart in seen:
            continue
        face = []
        cur = dart
        while cur not in seen:
            seen.add(cur)
            face.append(cur)
            if cur[0] in d.loops:
                break
            cur = _dart_after(d, *cur)
        if cur != dart and cur[0] not in d.loops:
            raise NonPlanar(f"face walk from {dart} does not close")
        raw.append(tuple(face))
    # Euler check and outer faces per connected piece
    pieces = d.pieces()
    piece_of = {e: i for i, g in enumerate(pieces) for e in g}
    by_piece = defaultdict(list)
    for face in raw:
        by_piece[piece_of[face[0][0]]].append(face)
    outer = []
    inner = []
    for i, g in enumerate(pieces):
        faces = by_piece[i]
        nodes4 = {k for k, node in enumerate(d.nodes) if node.is_crossing and node.ends[0] in g}
        twists = sum(1 for node in d.nodes if node.kind == "T" and node.ends[0] in g)
        V = len(nodes4)
        E = len(g) - twists
        if V == 0:
            ok = len(faces) == 2
        else:
            ok = V - E + len(faces) == 2
        if not ok:
            raise NonPlanar(f"Euler characteristic check fails on the piece containing edge {min(g)}")
        # the piece sits in the outer face through the right side of its smallest edge
        key = (min(g), "R")
        for face in faces:
            (outer if key in face else inner).append(face)
    merged = tuple(sorted(dart for face in outer for dart in face))
    rest = sorted(inner, key=min)
    return RegionMap((merged, *rest))


_LINE = re.compile(r"^(X\+|X-|V|T|O)\s+(.*)$")


def parse_diagram(text: str) -> Diagram:
    nodes = []
    loops = []
    expected = None
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("link"):
            m = re.fullmatch(r"link\s+components\s*=\s*(\d+)", line)
            if not m:
                raise MalformedCode(f"bad header {line!r}")
            expected = int(m.group(1))
            continue
        # allow several nodes per line separated by '/'
        for chunk in line.split("/"):
            chunk = chunk.strip()
            if not chunk:
                continue
            m = _LINE.match(chunk)
            if not m:
                raise MalformedCode(f"cannot parse {chunk!r}")
            kind, rest = m.groups()
            try:
                ends = tuple(int(tok) for tok in rest.split())
            except ValueError:
                raise MalformedCode(f"non-integer edge in {chunk!r}") from None
            if kind == "O":
                if len(ends) != 1:
                    raise MalformedCode(f"free loop takes one edge: {chunk!r}")
                loops.append(ends[0])
            else:
                nodes.append(Node(kind, ends))
    return Diagram(nodes, loops, expected)


def canonical_nodes(d: Diagram):
    out = []
    for k, node in enumerate(d.nodes):
        if node.kind == "V":
            s = d.side(k)
            node = Node("V", tuple(node.ends[p] for p in (s.left_in, s.right_in, s.right_out, s.left_out)))
        out.append(node)
    return sorted(out, key=lambda nd: (min(nd.ends), nd.kind, nd.ends))


def format_diagram(d: Diagram) -> str:
    lines = [f"link components={d.n_components}"]
    lines += [node.line() for node in canonical_nodes(d)]
    lines += [f"O {e}" for e in d.loops]
    return "\n".join(lines) + "\n"


def writhe_vector(d):
    return d.writhe_vector()


def add_kinks(d, w):
    return d.add_kinks(w)


def faces(d):
    return d.regions


def reverse_orientation(d):
    return d.reverse_orientation()


def braid_closure(word, strands) -> Diagram:
    """Closure of a braid word on ``strands`` upward strands.

    Letters are ``(kind, i)`` with kind ``"X+"`` (strand ``i`` crosses over
    strand ``i + 1``), ``"X-"`` (under), ``"V"`` acting on positions
    ``i, i + 1``, or ``"T"`` (twist bar on strand ``i``); positions are
    0-indexed.  Closing arcs run around the right-hand side.
    """
    cur = list(range(1, strands + 1))
    nxt = strands + 1
    raw = []
    for kind, i in word:
        if kind == "T":
            if not 0 <= i < strands:
                raise ValueError(f"bad strand {i}")
            raw.append(("T", [cur[i], nxt]))
            cur[i] = nxt
            nxt += 1
            continue
        if not 0 <= i < strands - 1:
            raise ValueError(f"bad position {i}")
        bl, br, tl, tr = cur[i], cur[i + 1], nxt + 1, nxt
        nxt += 2
        # counterclockwise: bottom-left, bottom-right, top-right, top-left
        if kind == "X+":
            ends = [br, tr, tl, bl]
        elif kind in ("X-", "V"):
            ends = [bl, br, tr, tl]
        else:
            raise ValueError(f"unknown letter {kind!r}")
        raw.append((kind, ends))
        cur[i], cur[i + 1] = tl, tr
    close = {top: bottom for bottom, top in zip(range(1, strands + 1), cur)}
    nodes = [Node(kind, tuple(close.get(e, e) for e in ends)) for kind, ends in raw]
    used = {e for node in nodes for e in node.ends}
    loops = [e for e in range(1, strands + 1) if e not in used]
    return Diagram(nodes, loops)
