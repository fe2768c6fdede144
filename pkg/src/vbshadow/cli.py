"""Command-line front end: ``vbshadow check|count|invariant|tabulate|search``.

Exit codes: 0 success, 1 validation failure, 2 I/O or parse failure.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from collections import defaultdict
from pathlib import Path

from .algebra import attach_twist, cycle_string, trivial_shadow
from .diagram import parse_diagram
from .errors import DimensionMismatch, NonPlanar, ParseError, VBShadowError
from .formats import format_birack, format_module, parse_birack, parse_module, parse_shadow
from .labeling import enumerate_shadow_labelings, enumerate_x_labelings, phi_per_framing, phi_shadow_per_framing
from .module import InvariantPolynomial, module_descriptor, phi_module_records, presentation_matrix
from .search import enumerate_biracks, enumerate_twists, random_modules

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class InputError(Exception):
    """Unreadable or unparsable input; maps to exit code 2."""


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _digest(path):
    return hashlib.sha256(_read(path).encode()).hexdigest()[:16]


def _parsing(fn, *args):
    try:
        return fn(*args)
    except (ParseError, DimensionMismatch, NonPlanar) as e:
        raise InputError(str(e)) from None


def _load_birack(args):
    path = args.birack or getattr(args, "birack_path", None)
    if not path:
        raise InputError("a birack file is required (--birack)")
    b = _parsing(parse_birack, _read(path))
    if getattr(args, "twist", None):
        b = attach_twist(b.birack, [int(v) for v in args.twist.replace(",", " ").split()])
    if args.twisted and not b.twisted:
        raise InputError("--twisted given but the birack has no T block")
    return b


def _load_shadow(args, b, required=False):
    if not args.shadow:
        if required:
            raise InputError("a shadow file is required (--shadow)")
        return None
    return _parsing(parse_shadow, _read(args.shadow), b)


def _load_module(args, b, s):
    if not args.module:
        raise InputError("a module file is required (--module)")
    return _parsing(parse_module, _read(args.module), b, s)


def _load_diagram(path, reverse=False):
    d = _parsing(parse_diagram, _read(path))
    _parsing(lambda: d.regions)  # reject non-planar codes up front
    return d.reverse_orientation() if reverse else d


def _framing(text):
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise InputError(f"bad framing vector {text!r}") from None


def _emit(args, plain_lines, record):
    if args.format == "json":
        print(json.dumps(record, indent=2, sort_keys=True))
    else:
        print("\n".join(plain_lines))


# -- subcommands


def cmd_check(args):
    b = _load_birack(args)
    base = b.birack
    kink = base.kink
    record = {"n": base.n, "pi": cycle_string(kink.pi), "N": kink.N, "twisted": b.twisted,
              "biquandle": base.is_biquandle}
    lines = [f"valid, pi={cycle_string(kink.pi)}, N={kink.N}"]
    if b.twisted:
        lines.append("twist T=" + " ".join(str(v + 1) for v in b.T))
        record["T"] = [v + 1 for v in b.T]
    s = _load_shadow(args, b)
    if s is not None:
        lines.append(f"shadow valid, m={s.m}")
        record["shadow_m"] = s.m
    if args.module:
        spec = _load_module(args, b, s or trivial_shadow(b))
        lines.append(f"module valid, q={spec.q}")
        record["module_q"] = spec.q
    _emit(args, lines, record)
    return EXIT_OK


def cmd_count(args):
    b = _load_birack(args)
    s = _load_shadow(args, b)
    d = _load_diagram(args.diagram, args.reverse)
    if args.framing:
        w = _framing(args.framing)
        dk = d.add_kinks(w)
        per = [(w, len(enumerate_x_labelings(dk, b)))]
        per_s = [(w, len(enumerate_shadow_labelings(dk, b, s)))] if s else None
    else:
        per = phi_per_framing(d, b, args.jobs)
        per_s = phi_shadow_per_framing(d, b, s, args.jobs) if s else None
    lines = [f"framing {','.join(map(str, w))}: {c}" for w, c in per]
    lines.append(f"Phi^Z = {sum(c for _, c in per)}")
    record = {"diagram": _digest(args.diagram), "birack": _digest(args.birack),
              "per_framing": [{"framing": list(w), "count": c} for w, c in per],
              "phi_Z": sum(c for _, c in per)}
    if per_s is not None:
        total = sum(c for _, c in per_s)
        lines.append(f"Phi^Z_XS = {total}")
        record["phi_Z_XS"] = total
        record["shadow"] = _digest(args.shadow)
    _emit(args, lines, record)
    return EXIT_OK


def _invariant(d, b, s, spec, jobs, framing=None):
    if framing is not None:
        dk = d.add_kinks(framing)
        recs = []
        for sl in enumerate_shadow_labelings(dk, b, s):
            recs.append((framing, sl, module_descriptor(presentation_matrix(dk, sl, spec))))
        poly = InvariantPolynomial.from_counts(desc.count for _, _, desc in recs)
        detail = [{"framing": list(w), "labels": sl.x.printed(), "regions": [a + 1 for a in sl.regions],
                   "count": desc.count, "module": str(desc)} for w, sl, desc in recs]
        return poly, detail
    recs = phi_module_records(d, spec, jobs)
    poly = InvariantPolynomial.from_counts(r.descriptor.count for r in recs)
    detail = [{"framing": list(r.framing), "labels": r.labels, "regions": [a + 1 for a in r.regions],
               "count": r.descriptor.count, "module": str(r.descriptor)} for r in recs]
    return poly, detail


def cmd_invariant(args):
    b = _load_birack(args)
    s = _load_shadow(args, b) or trivial_shadow(b)
    spec = _load_module(args, b, s)
    d = _load_diagram(args.diagram, args.reverse)
    poly, detail = _invariant(d, b, s, spec, args.jobs, _framing(args.framing) if args.framing else None)
    record = {"inputs": {k: _digest(getattr(args, k)) for k in ("birack", "shadow", "module", "diagram")
                         if getattr(args, k)},
              "polynomial": str(poly), "labelings": detail}
    _emit(args, [str(poly)], record)
    return EXIT_OK


def cmd_tabulate(args):
    b = _load_birack(args)
    s = _load_shadow(args, b) or trivial_shadow(b)
    spec = _load_module(args, b, s)
    folder = Path(args.directory)
    if not folder.is_dir():
        raise InputError(f"{folder} is not a directory")
    groups = defaultdict(list)
    failed = []
    for path in sorted(folder.iterdir(), key=lambda p: p.name):
        if not path.is_file() or path.name.startswith("."):
            continue
        try:
            d = _load_diagram(path, args.reverse)
        except InputError as e:
            failed.append((path.name, str(e)))
            continue
        poly, _ = _invariant(d, b, s, spec, args.jobs)
        groups[str(poly)].append(path.stem)
    order = sorted(groups, key=lambda k: InvariantPolynomial.parse(k).terms)
    lines = [f"{k} | {', '.join(groups[k])}" for k in order]
    lines += [f"skipped {name}: {msg}" for name, msg in failed]
    _emit(args, lines, {"table": {k: groups[k] for k in order}, "skipped": dict(failed)})
    return EXIT_IO if failed else EXIT_OK


def cmd_search(args):
    out = Path(args.out) if args.out else None
    if args.kind == "biracks":
        rep = enumerate_biracks(args.n, allow_large=args.allow_large)
        texts = [format_birack(b) for b in rep.found]
    elif args.kind == "twists":
        rep = enumerate_twists(_load_birack(args))
        texts = [format_birack(t) for t in rep.found]
    else:
        b = _load_birack(args)
        s = _load_shadow(args, b) or trivial_shadow(b)
        rep = random_modules(b, s, args.q, args.trials, args.seed)
        texts = [format_module(m) for m in rep.found]
    if out is not None:
        try:
            out.mkdir(parents=True, exist_ok=True)
            ext = {"biracks": "birack", "twists": "birack", "modules": "module"}[args.kind]
            for i, text in enumerate(texts, 1):
                (out / f"{args.kind}-{i:04d}.{ext}").write_text(text)
        except OSError as e:
            raise InputError(f"cannot write to {out}: {e.strerror}") from None
    lines = [rep.summary()]
    if args.kind == "twists":
        lines += ["T=" + " ".join(str(v + 1) for v in t.T) for t in rep.found] or ["no twist map found"]
    elif out is None:
        lines += texts
    record = {"parameters": rep.parameters, "trials": rep.trials, "found": texts,
              "rejects": dict(sorted(rep.rejects.items()))}
    _emit(args, lines, record)
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--birack")
    common.add_argument("--shadow")
    common.add_argument("--module")
    common.add_argument("--diagram")
    common.add_argument("--framing", help="single framing vector w1,w2,...")
    common.add_argument("--reverse", action="store_true", help="reverse the diagram's orientation")
    common.add_argument("--twisted", action="store_true", help="require a twisted birack")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--format", choices=("plain", "json"), default="plain")

    p = argparse.ArgumentParser(prog="vbshadow", description="Virtual birack shadow invariants.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="validate structures")
    c.add_argument("birack_path", nargs="?")
    c.add_argument("--twist", help='twist map, e.g. "2 1 3"')
    c.set_defaults(func=cmd_check)
    c = sub.add_parser("count", parents=[common], help="labeling counts")
    c.set_defaults(func=cmd_count)
    c = sub.add_parser("invariant", parents=[common], help="module polynomial")
    c.set_defaults(func=cmd_invariant)
    c = sub.add_parser("tabulate", parents=[common], help="module polynomial of every diagram in a directory")
    c.add_argument("directory")
    c.set_defaults(func=cmd_tabulate)
    c = sub.add_parser("search", parents=[common], help="find structures")
    c.add_argument("kind", choices=("modules", "twists", "biracks"))
    c.add_argument("--q", type=int, default=5)
    c.add_argument("--trials", type=int, default=100)
    c.add_argument("--n", type=int, default=2)
    c.add_argument("--allow-large", action="store_true")
    c.add_argument("--twist", help=argparse.SUPPRESS)
    c.add_argument("--out", help="directory for found structures")
    c.set_defaults(func=cmd_search)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    if args.command == "check" and args.birack_path and not args.birack:
        args.birack = args.birack_path
    for name in ("diagram",):
        if args.command in ("count", "invariant") and not getattr(args, name):
            print(f"error: --{name} is required", file=sys.stderr)
            return EXIT_IO
    try:
        return args.func(args)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    except VBShadowError as e:
        print(f"invalid: {e}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
