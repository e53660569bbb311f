"""Command-line front end: ``gds <command> [options]``."""
from __future__ import annotations

import argparse
import sys
import warnings
from concurrent.futures import ProcessPoolExecutor

from .alcove import (EllContext, element_from_weight, ell_dot, length, locate, parse_element,
                     parse_weight)
from .characters import UNKNOWN
from .core_lie import root_system
from .errors import GdsError, StructureError
from .labels import (Decomposition, DualWeyl, Label, Simple, Tilting, Weyl, canonical_json,
                     character_of, gfd_of, loads, wfd_of)


class UsageError(Exception):
    pass


def _fmt_weight(w) -> str:
    return str(w[0]) if len(w) == 1 else "(" + ",".join(str(c) for c in w) + ")"


def _context(args) -> EllContext:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return EllContext(root_system(args.type), args.ell, args.case)


def _weight(text: str, ctx: EllContext):
    w = parse_weight(text)
    if len(w) != ctx.rs.rank:
        raise StructureError(f"weight {text!r} should have {ctx.rs.rank} coordinates")
    return w


def _element(text: str, ctx: EllContext):
    """An element given either as ``t:(..)word`` or as a weight to be located."""
    if text.startswith("t:") or text[:1] in "su" or text == "e":
        return parse_element(text, ctx.rs)
    return element_from_weight(_weight(text, ctx), ctx)


def _engine(ctx: EllContext):
    if ctx.rs.label == "A1":
        from . import sl2
        return sl2
    if ctx.rs.label == "A2":
        from . import sl3
        return sl3
    raise UsageError(f"no engine for type {ctx.rs.label}; use A1 or A2")


def _show_value(v) -> str:
    return "unknown" if v is UNKNOWN else str(v)


def _render_decomposition(dec: Decomposition, as_json: bool) -> str:
    if as_json:
        return dec.dumps()
    lines = []
    for label, m in dec.summands:
        lines.append(f"{m} x {label.pretty()}  gfd={_show_value(gfd_of(label, dec.ctx))}")
    if not dec.complete:
        lines.append("(partial: only the summands determined in closed form are listed)")
    cons = dec.conserved()
    if cons is not None:
        lines.append(f"character conserved: {'yes' if cons else 'NO'}")
    return "\n".join(lines)


def _render_label(label: Label, ctx: EllContext, as_json: bool) -> str:
    if as_json:
        return canonical_json({"label": label.to_obj(), "gfd": _json(gfd_of(label, ctx)),
                               "wfd": _json(wfd_of(label, ctx))})
    return label.pretty()


def _json(v):
    return None if v is UNKNOWN else v


# commands


def _decompose_one(job):
    (label, ell, case), lhs, rhs, as_json = job
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ctx = EllContext(root_system(label), ell, case)
    return _render_decomposed(ctx, lhs, rhs, as_json)


def _render_decomposed(ctx, lhs, rhs, as_json):
    text = _render_decomposition(_decompose(ctx, lhs, rhs), as_json)
    if as_json or (ctx.rs.label == "A1" and not ctx.quantum):
        return text
    return "regular part:\n" + text


def _decompose(ctx: EllContext, lhs, rhs) -> Decomposition:
    engine = _engine(ctx)
    if ctx.rs.label == "A1" and not ctx.quantum:
        if min(lhs[0], rhs[0]) < 0:
            raise UsageError("weights must be non-negative")
        return engine.doty_henke(lhs[0], rhs[0], ctx)
    x, y = element_from_weight(lhs, ctx), element_from_weight(rhs, ctx)
    return engine.regular_part(x, y, ctx)


def cmd_decompose(args, ctx, out):
    pairs = []
    if args.simple:
        if len(args.simple) != 2:
            raise UsageError("--simple must be given exactly twice")
        pairs.append((_weight(args.simple[0], ctx), _weight(args.simple[1], ctx)))
    if args.batch:
        with open(args.batch) as fh:
            for line in fh:
                parts = line.split()
                if not parts or parts[0].startswith("#"):
                    continue
                if len(parts) != 2:
                    raise UsageError(f"batch line needs two weights: {line.strip()!r}")
                pairs.append((_weight(parts[0], ctx), _weight(parts[1], ctx)))
    if not pairs:
        raise UsageError("give --simple twice or --batch FILE")
    jobs = [((ctx.rs.label, ctx.ell, ctx.case), a, b, args.json) for a, b in pairs]
    if args.jobs > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_decompose_one, jobs))
    else:
        results = [_render_decomposed(ctx, a, b, args.json) for _, a, b, _ in jobs]
    if len(results) > 1 and not args.json:
        results = [f"# {_fmt_weight(a)} (x) {_fmt_weight(b)}\n{r}"
                   for (a, b), r in zip(pairs, results)]
    print("\n".join(results), file=out)
    return 0


def cmd_generic_summand(args, ctx, out):
    engine = _engine(ctx)
    x, y = _element(args.x, ctx), _element(args.y, ctx)
    if args.kind == "simple":
        label = engine.generic_summand(x, y, ctx)
    elif ctx.rs.label == "A1":
        label = (engine.generic_summand_nabla(x, y, ctx) if args.kind == "dualweyl"
                 else engine.generic_summand_weyl(x, y, ctx))
    else:
        from .labels import dual_label
        label = engine.generic_summand_nabla_restricted(x, y, ctx)
        if args.kind == "weyl":
            label = dual_label(label)
    print(_render_label(label, ctx, args.json), file=out)
    return 0


def cmd_regular_part(args, ctx, out):
    x, y = _element(args.x, ctx), _element(args.y, ctx)
    if args.lam is not None or args.mu is not None:
        from .verlinde import translated_regular_part
        lam = _weight(args.lam, ctx) if args.lam else ctx.rs.zero
        mu = _weight(args.mu, ctx) if args.mu else ctx.rs.zero
        dec = translated_regular_part(x, y, lam, mu, ctx, args.kind)
    else:
        if args.kind != "simple":
            raise UsageError("--kind weyl/dualweyl needs --lam/--mu (translated regular part)")
        dec = _engine(ctx).regular_part(x, y, ctx)
    print(_render_decomposition(dec, args.json), file=out)
    return 0


def cmd_fusion(args, ctx, out):
    from .verlinde import fusion
    coeffs = fusion(_weight(args.lhs, ctx), _weight(args.rhs, ctx), ctx)
    if args.json:
        print(canonical_json([{"weight": list(nu), "coefficient": c}
                              for nu, c in sorted(coeffs.items())]), file=out)
    else:
        print(" ".join(f"{_fmt_weight(nu)}:{c}" for nu, c in sorted(coeffs.items())), file=out)
    return 0


def _label_from_args(args, ctx) -> Label:
    given = [(cls, text) for cls, text in ((Simple, args.simple), (Weyl, args.weyl),
                                          (DualWeyl, args.dual_weyl), (Tilting, args.tilting))
             if text is not None]
    if args.label is not None:
        given.append((None, args.label))
    if len(given) != 1:
        raise UsageError("give exactly one of --label, --simple, --weyl, --dual-weyl, --tilting")
    cls, text = given[0]
    if cls is None:
        try:
            return loads(text)
        except (ValueError, KeyError, TypeError) as exc:
            raise StructureError(f"cannot parse label: {exc}") from None
    return cls(_weight(text, ctx))


def cmd_character(args, ctx, out):
    label = _label_from_args(args, ctx)
    ch = character_of(label, ctx)
    if ch is UNKNOWN:
        print(canonical_json({"label": label.to_obj(), "character": None}) if args.json
              else f"{label.pretty()}: character unknown", file=out)
        return 0
    dom = sorted(ch.dominant_part().items(), key=lambda kv: (-sum(kv[0]), kv[0]))
    if args.json:
        print(canonical_json({"label": label.to_obj(), "dimension": ch.dim(),
                              "dominant": [[list(mu), m] for mu, m in dom]}), file=out)
    else:
        print(f"{label.pretty()}: dimension {ch.dim()}", file=out)
        print(" ".join(f"{_fmt_weight(mu)}:{m}" for mu, m in dom), file=out)
    return 0


def cmd_gfd(args, ctx, out):
    label = _label_from_args(args, ctx)
    g, w = gfd_of(label, ctx), wfd_of(label, ctx)
    if args.json:
        print(canonical_json({"label": label.to_obj(), "gfd": _json(g), "wfd": _json(w)}),
              file=out)
    else:
        print(f"gfd={_show_value(g)} wfd={_show_value(w)}", file=out)
    return 0


def cmd_alcove(args, ctx, out):
    if args.length is not None:
        print(length(parse_element(args.length, ctx.rs), ctx), file=out)
    elif args.dot is not None:
        print(_fmt_weight(ell_dot(parse_element(args.dot, ctx.rs), ctx.rs.zero, ctx)), file=out)
    elif args.locate is not None:
        loc = locate(_weight(args.locate, ctx), ctx)
        if args.json:
            print(canonical_json({"element": str(loc.element), "weight": list(loc.weight),
                                  "regular": loc.regular}), file=out)
        else:
            kind = "regular" if loc.regular else "singular"
            print(f"{loc.element} . {_fmt_weight(loc.weight)} ({kind})", file=out)
    else:
        raise UsageError("give one of --length, --dot, --locate")
    return 0


def cmd_selftest(args, out):
    from .acceptance import run_all
    results = run_all(args.only, jobs=args.jobs)
    for r in results:
        print(r.line(), file=out)
    failed = [r.number for r in results if not r.ok]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed", file=out)
    return 0 if not failed else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gds", description="Generic direct summands of tensor "
                                "products for reductive groups of type A1 and A2.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--type", default="A1", help="root system, e.g. A1 or A2")
        sp.add_argument("--ell", type=int, required=True)
        sp.add_argument("--case", choices=("modular", "quantum"), default="modular")
        sp.add_argument("--json", action="store_true", help="emit canonical JSON")
        return sp

    sp = common(sub.add_parser("decompose", help="tensor product of two simple modules"))
    sp.add_argument("--simple", action="append", metavar="WEIGHT")
    sp.add_argument("--batch", metavar="FILE", help="one pair of weights per line")
    sp.add_argument("--jobs", type=int, default=1)

    for name, helptext in (("generic-summand", "generic direct summand G(x,y)"),
                           ("regular-part", "regular part of L(x.0) (x) L(y.0)")):
        sp = common(sub.add_parser(name, help=helptext))
        sp.add_argument("--x", required=True, help="t:(..)word or a weight in W_ext . 0")
        sp.add_argument("--y", required=True)
        sp.add_argument("--kind", choices=("simple", "weyl", "dualweyl"), default="simple")
        if name == "regular-part":
            sp.add_argument("--lam", help="alcove weight for the left factor")
            sp.add_argument("--mu", help="alcove weight for the right factor")

    sp = common(sub.add_parser("fusion", help="Verlinde coefficients"))
    sp.add_argument("--lhs", required=True)
    sp.add_argument("--rhs", required=True)

    for name in ("character", "gfd"):
        sp = common(sub.add_parser(name, help=f"{name} of a module label"))
        sp.add_argument("--label", help="label as JSON")
        sp.add_argument("--simple")
        sp.add_argument("--weyl")
        sp.add_argument("--dual-weyl")
        sp.add_argument("--tilting")

    sp = common(sub.add_parser("alcove", help="lengths, dot action and alcove location"))
    sp.add_argument("--length", metavar="ELEMENT")
    sp.add_argument("--dot", metavar="ELEMENT", help="print x . 0")
    sp.add_argument("--locate", metavar="WEIGHT")

    sp = sub.add_parser("selftest", help="run the acceptance checks")
    sp.add_argument("--only", type=int, nargs="*", metavar="N")
    sp.add_argument("--jobs", type=int, default=1)
    return p


COMMANDS = {
    "decompose": cmd_decompose,
    "generic-summand": cmd_generic_summand,
    "regular-part": cmd_regular_part,
    "fusion": cmd_fusion,
    "character": cmd_character,
    "gfd": cmd_gfd,
    "alcove": cmd_alcove,
}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "selftest":
            return cmd_selftest(args, out)
        return COMMANDS[args.command](args, _context(args), out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=err)
        return 2
    except GdsError as exc:
        print(f"error: {exc.name}: {exc}", file=err)
        return 1


def main() -> None:
    sys.exit(run())
