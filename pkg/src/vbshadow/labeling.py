"""Birack and shadow labelings of diagrams, and the counting invariants.

Labeling rule at a crossing: with the two incoming semiarcs ``(left, right)``
(adjacent counterclockwise, left first) and outgoing ``(left, right)``,

* positive classical: ``(left_out, right_out) = B(left_in, right_in)``,
  so the over strand ``x`` enters on the left and the under strand ``y`` on
  the right, leaving as ``x_y`` and ``y^x``;
* negative classical: ``B(left_out, right_out) = (left_in, right_in)``;
* virtual: ``(left_out, right_out) = V(left_in, right_in)``;
* twist bar: ``out = T(in)``.

Regions: crossing a semiarc labeled ``x`` from its right side to its left
side sends the region label ``A`` to ``A . x``.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .errors import InternalInconsistency


@dataclass(frozen=True)
class XLabeling:
    labels: tuple[tuple[int, int], ...]  # sorted (edge, 0-indexed label)

    @property
    def as_dict(self):
        return dict(self.labels)

    def __getitem__(self, e):
        return self.as_dict[e]

    def printed(self):
        return {e: x + 1 for e, x in self.labels}


@dataclass(frozen=True)
class ShadowLabeling:
    x: XLabeling
    regions: tuple[int, ...]  # 0-indexed shadow label per face

    def printed(self):
        return self.x.printed(), [a + 1 for a in self.regions]


def _node_tuples(d, b, k):
    """All admissible label tuples at node ``k``, keyed by end position."""
    node = d.nodes[k]
    bir = b.birack
    n = bir.n
    out = []
    if node.kind == "T":
        T = b.T
        for x in range(n):
            out.append({0: x, 1: T[x]})
        return out
    s = d.side(k)
    for x, y in itertools.product(range(n), repeat=2):
        if node.kind == "X+":
            lo, ro = bir.B[x][y]
            li, ri = x, y
        elif node.kind == "X-":
            # x, y are the outgoing labels here
            li, ri = bir.B[x][y]
            lo, ro = x, y
        else:
            lo, ro = bir.V[x][y]
            li, ri = x, y
        out.append({s.left_in: li, s.right_in: ri, s.left_out: lo, s.right_out: ro})
    return out


def _check_structure(d, b):
    if any(node.kind == "T" for node in d.nodes) and not getattr(b, "twisted", False):
        raise ValueError("diagram has twist bars; a twisted birack is required")


def enumerate_x_labelings(d, b) -> list[XLabeling]:
    """Every labeling of ``d`` by ``b``, in lexicographic order of (edge, label)."""
    _check_structure(d, b)
    n = b.n
    edges = d.edges
    tuples = [_node_tuples(d, b, k) for k in range(len(d.nodes))]
    at_edge = {e: [] for e in edges}
    for k, node in enumerate(d.nodes):
        for e in set(node.ends):
            at_edge[e].append(k)
    results = []

    def propagate(lab, queue):
        while queue:
            k = queue.pop()
            ends = d.nodes[k].ends
            fits = [t for t in tuples[k]
                    if all(lab.get(ends[p], v) == v for p, v in t.items())
                    and all(t[p] == t[q] for p in t for q in t if ends[p] == ends[q])]
            if not fits:
                return False
            if len(fits) == 1:
                for p, v in fits[0].items():
                    e = ends[p]
                    if e not in lab:
                        lab[e] = v
                        queue.extend(at_edge[e])
        return True

    def search(lab):
        free = [e for e in edges if e not in lab]
        if not free:
            results.append(XLabeling(tuple(sorted(lab.items()))))
            return
        e = free[0]
        for v in range(n):
            trial = dict(lab)
            trial[e] = v
            if propagate(trial, list(at_edge[e])):
                search(trial)

    start = {}
    if propagate(start, list(range(len(d.nodes)))):
        search(start)
    return results


def satisfies(d, b, lab: dict) -> bool:
    """Direct check of every node constraint; used as an oracle."""
    for k, node in enumerate(d.nodes):
        ends = node.ends
        if not any(all(lab[ends[p]] == v for p, v in t.items()) for t in _node_tuples(d, b, k)):
            return False
    return True


def brute_force_x_labelings(d, b) -> list[XLabeling]:
    edges = d.edges
    out = []
    for vals in itertools.product(range(b.n), repeat=len(edges)):
        lab = dict(zip(edges, vals))
        if satisfies(d, b, lab):
            out.append(XLabeling(tuple(sorted(lab.items()))))
    return out


def region_labels(d, shadow, xl: XLabeling, source_label: int) -> tuple[int, ...]:
    """Propagate region labels from face 0, which gets ``source_label``."""
    regions = d.regions
    face_of = regions.face_of
    lab = xl.as_dict
    act, act_inv = shadow.act, shadow.act_inv
    out = [None] * len(regions)
    out[0] = source_label
    adj = [[] for _ in regions.faces]
    for e in d.edges:
        fl, fr = face_of[(e, "L")], face_of[(e, "R")]
        adj[fr].append((fl, lab[e], True))
        adj[fl].append((fr, lab[e], False))
    stack = [0]
    while stack:
        f = stack.pop()
        for g, x, forward in adj[f]:
            val = act(out[f], x) if forward else act_inv(out[f], x)
            if out[g] is None:
                out[g] = val
                stack.append(g)
            elif out[g] != val:
                raise InternalInconsistency(f"region {g} gets both {out[g] + 1} and {val + 1}")
    if any(v is None for v in out):
        raise InternalInconsistency("some region is unreachable")
    return tuple(out)


def enumerate_shadow_labelings(d, b, shadow) -> list[ShadowLabeling]:
    out = []
    for xl in enumerate_x_labelings(d, b):
        for A in range(shadow.m):
            out.append(ShadowLabeling(xl, region_labels(d, shadow, xl, A)))
    return out


def framings(c, N):
    return list(itertools.product(range(N), repeat=c))


def map_framings(fn, d, args, jobs=1):
    """Apply ``fn(diagram_with_kinks, *args)`` over the framing tile, ordered by framing."""
    ws = framings(d.n_components, args[0].rank)
    ds = [d.add_kinks(w) for w in ws]
    if jobs and jobs > 1 and len(ds) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            vals = list(pool.map(fn, ds, *[[a] * len(ds) for a in args]))
    else:
        vals = [fn(dd, *args) for dd in ds]
    return list(zip(ws, vals))


def _count_x(d, b):
    return len(enumerate_x_labelings(d, b))


def _count_shadow(d, b, s):
    return len(enumerate_shadow_labelings(d, b, s))


def phi_basic(d, b) -> int:
    return _count_x(d, b)


def phi_per_framing(d, b, jobs=1):
    return map_framings(_count_x, d, (b,), jobs)


def phi_integral(d, b, jobs=1) -> int:
    return sum(v for _, v in phi_per_framing(d, b, jobs))


def phi_shadow_per_framing(d, b, s, jobs=1):
    return map_framings(_count_shadow, d, (b, s), jobs)


def phi_shadow_integral(d, b, s, jobs=1) -> int:
    return sum(v for _, v in phi_shadow_per_framing(d, b, s, jobs))
