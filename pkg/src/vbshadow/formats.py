"""Text formats for biracks, shadows and modules (1-indexed, ``#`` comments).

Birack::

    birack n=2
    B1:
    1 1
    2 2
    B2:
    ...
    V1: / V2: blocks, and for ``twisted`` files a ``T:`` line

Shadow::

    shadow m=2 n=2
    2 2
    1 1

Module (one ``V:``, ``T:``, ``S:``, ``R:`` group per shadow element in order;
twisted files use ``V:``, ``T:``, ``R:``, ``Q:``)::

    module q=5 m=2 n=2
    V:
    2 2
    2 2
    ...
"""

from __future__ import annotations

import re

from .algebra import attach_twist, birack_from_tables, shadow_from_table
from .errors import DimensionMismatch, ParseError
from .module import module_from_blocks


def _lines(text):
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line)
    if not out:
        raise ParseError("empty input")
    return out


def _header(line, kind):
    words = line.split()
    if not words or words[0] != kind:
        raise ParseError(f"expected a '{kind}' header, got {line!r}")
    params, flags = {}, set()
    for w in words[1:]:
        m = re.fullmatch(r"(\w+)=(\d+)", w)
        if m:
            params[m.group(1)] = int(m.group(2))
        else:
            flags.add(w)
    return params, flags


def _ints(line):
    try:
        return [int(v) for v in line.split()]
    except ValueError:
        raise ParseError(f"non-integer entry in {line!r}") from None


def _blocks(lines):
    """``[(label, [rows])]`` in file order."""
    out = []
    for line in lines:
        m = re.fullmatch(r"([A-Za-z]\w*):\s*(.*)", line)
        if m:
            out.append((m.group(1), []))
            if m.group(2):
                out[-1][1].append(_ints(m.group(2)))
        elif not out:
            raise ParseError(f"data before the first block label: {line!r}")
        else:
            out[-1][1].append(_ints(line))
    return out


def _need(params, *keys):
    for k in keys:
        if k not in params:
            raise ParseError(f"header is missing {k}=")
    return [params[k] for k in keys]


def _matrix(rows):
    return "\n".join(" ".join(str(v) for v in row) for row in rows)


# -- biracks


def parse_birack(text):
    lines = _lines(text)
    params, flags = _header(lines[0], "birack")
    (n,) = _need(params, "n")
    blocks = dict(_blocks(lines[1:]))
    for name in ("B1", "B2", "V1", "V2"):
        if name not in blocks:
            raise ParseError(f"missing {name}: block")
        if len(blocks[name]) != n:
            raise DimensionMismatch(f"{name} must have {n} rows")
    b = birack_from_tables(n, *(blocks[k] for k in ("B1", "B2", "V1", "V2")))
    if "twisted" in flags or "T" in blocks:
        if "T" not in blocks or len(blocks["T"]) != 1:
            raise ParseError("twisted birack needs a one-line T: block")
        return attach_twist(b, blocks["T"][0])
    return b


def format_birack(b):
    base = b.birack
    head = f"birack n={base.n}" + (" twisted" if b.twisted else "")
    parts = [head]
    for name, tab in zip(("B1", "B2", "V1", "V2"), base.tables()):
        parts += [f"{name}:", _matrix(tab)]
    if b.twisted:
        parts += ["T:", " ".join(str(v + 1) for v in b.T)]
    return "\n".join(parts) + "\n"


# -- shadows


def parse_shadow(text, b):
    lines = _lines(text)
    params, _ = _header(lines[0], "shadow")
    m, n = _need(params, "m", "n")
    if n != b.n:
        raise DimensionMismatch(f"shadow is for n={n}, birack has n={b.n}")
    rows = [_ints(line) for line in lines[1:]]
    if len(rows) != m:
        raise DimensionMismatch(f"shadow needs {m} rows")
    return shadow_from_table(b, rows)


def format_shadow(s):
    return f"shadow m={s.m} n={s.birack.n}\n" + _matrix(s.printed()) + "\n"


# -- modules


def parse_module(text, b, shadow):
    lines = _lines(text)
    params, flags = _header(lines[0], "module")
    q, m, n = _need(params, "q", "m", "n")
    if (m, n) != (shadow.m, b.n):
        raise DimensionMismatch(f"module is for m={m} n={n}, structures have m={shadow.m} n={b.n}")
    twisted = "twisted" in flags
    if twisted != b.twisted:
        raise DimensionMismatch("module and birack disagree about twisting")
    labels = ("V", "T", "R", "Q") if twisted else ("V", "T", "S", "R")
    blocks = _blocks(lines[1:])
    if len(blocks) != 4 * m:
        raise ParseError(f"expected {4 * m} blocks, found {len(blocks)}")
    rows = []
    for A in range(m):
        group = blocks[4 * A:4 * A + 4]
        if tuple(g[0] for g in group) != labels:
            raise ParseError(f"shadow element {A + 1}: blocks must be {', '.join(labels)}")
        mats = [g[1] for g in group]
        if twisted:
            if len(mats[3]) != 1 or len(mats[3][0]) != n:
                raise DimensionMismatch("Q: must be one line of n entries")
            mats[3] = [[v] for v in mats[3][0]]
        for mat in mats[:3]:
            if len(mat) != n or any(len(r) != n for r in mat):
                raise DimensionMismatch(f"blocks must be {n} x {n}")
        for x in range(n):
            rows.append([v for mat in mats for v in mat[x]])
    return module_from_blocks(b, shadow, q, rows)


def format_module(spec):
    m, n = spec.m, spec.n
    head = f"module q={spec.q} m={m} n={n}" + (" twisted" if spec.twisted else "")
    parts = [head]
    for A in range(m):
        if spec.twisted:
            groups = [("V", spec.v), ("T", spec.t), ("R", spec.r)]
        else:
            groups = [("V", spec.v), ("T", spec.t), ("S", spec.s), ("R", spec.r)]
        for name, ten in groups:
            parts += [f"{name}:", _matrix(ten[A])]
        if spec.twisted:
            parts += ["Q:", " ".join(str(v) for v in spec.qcoef[A])]
    return "\n".join(parts) + "\n"
