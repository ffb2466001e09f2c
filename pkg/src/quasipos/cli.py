"""Command-line interface: ``quasipos <verb> [options]``.

Verbs: convert, invariant, qbounds, family, check, render.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import (
    DEFAULT_BUDGET_F,
    DEFAULT_BUDGET_P,
    TSV_HEADER,
    BoundsError,
    FamilySpec,
    family_generate,
    framed_order,
    q_report,
)
from .braid import (
    BandRepresentation,
    BraidError,
    BraidWord,
    PlatPlan,
    braid_as_plat,
    closed_braid_diagram,
    parse_bands_text,
    parse_braid_text,
    parse_plat_text,
    plat_diagram,
    plat_to_text,
)
from .checks import CHECKS, run_checks
from .diagram import (
    DiagramError,
    LinkDiagram,
    component_count,
    from_pd_text,
    orient,
    to_pd_text,
    writhe,
)
from .fence import (
    Fence,
    FenceError,
    band_rep_to_fence,
    fence_m,
    fence_to_band_rep,
    fence_to_diagram,
    fence_to_positive_plat,
    fence_writhe,
    plat_to_fence,
)
from .laurent import LaurentError
from .render import RenderError, render_svg
from .skein import g_poly, homfly_P, kauffman_L, kauffman_mod2, r_poly, set_cache_entries

DOMAIN_ERRORS = (BraidError, FenceError, DiagramError, BoundsError, LaurentError, RenderError)

INVARIANTS = ("P", "R", "L", "F", "G0", "G1", "framed-order", "writhe", "components")


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# input

def parse_input(text: str):
    """Infer the notation from the first non-blank line and parse it."""
    body = text.strip()
    if not body:
        raise UsageError("empty input")
    head = body.split(None, 1)[0]
    if head == "braid":
        return parse_braid_text(body)
    if head == "bands":
        return parse_bands_text(body)
    if head == "plat":
        return parse_plat_text(body)
    if body.startswith("{"):
        try:
            return Fence.from_json(body)
        except json.JSONDecodeError as exc:
            raise FenceError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if body.startswith(("X[", "PD", "Loops[", "pd")):
        return from_pd_text(body)
    raise UsageError("cannot infer input format; expected a braid, bands, plat, fence JSON or PD header")


def _read_input(value: str) -> str:
    if value == "-":
        return sys.stdin.read()
    if os.path.isfile(value):
        with open(value, encoding="utf-8") as fh:
            return fh.read()
    return value.replace("\\n", "\n")


def _describe(obj) -> str:
    if isinstance(obj, (BraidWord, BandRepresentation)):
        return obj.to_text().strip().replace("\n", ": ")
    if isinstance(obj, tuple):
        return plat_to_text(*obj).strip().replace("\n", ": ")
    if isinstance(obj, Fence):
        return f"fence with {len(obj.posts)} posts, {len(obj.wires)} wires"
    return f"diagram with {len(obj.crossings)} crossings"


def as_diagram(obj) -> LinkDiagram:
    """Oriented diagram of the link an input object presents."""
    if isinstance(obj, BraidWord):
        return closed_braid_diagram(obj)
    if isinstance(obj, BandRepresentation):
        return closed_braid_diagram(obj.word())
    if isinstance(obj, tuple):
        return orient(plat_diagram(*obj))
    if isinstance(obj, Fence):
        return orient(fence_to_diagram(obj))
    return obj if obj.oriented else orient(obj)


def _family_specs(args):
    specs = []
    if args.torus2 is not None:
        specs += [FamilySpec("torus2", (k,)) for k in args.torus2]
    if args.torus is not None:
        specs.append(FamilySpec("torus", tuple(args.torus)))
    if args.pretzel is not None:
        specs.append(FamilySpec("pretzel", tuple(args.pretzel)))
    if args.braid is not None:
        letters = [int(x) for x in args.braid.replace(",", " ").split()]
        n = max((abs(x) for x in letters), default=0) + 1
        specs.append(FamilySpec("braid", (BraidWord(n, letters),)))
    if args.family is not None:
        ks = args.k
        if args.family == "torus2":
            if not ks:
                raise UsageError("--family torus2 needs -k")
            specs += [FamilySpec("torus2", (k,)) for k in ks]
        elif args.family == "torus":
            if not ks or len(ks) != 2:
                raise UsageError("--family torus needs -k M N")
            specs.append(FamilySpec("torus", tuple(ks)))
        elif args.family == "pretzel":
            if not ks or len(ks) != 3:
                raise UsageError("--family pretzel needs -k R S T")
            specs.append(FamilySpec("pretzel", tuple(ks)))
    return specs


def _subjects(args):
    """List of (description, object, family-or-None) from the input or family flags."""
    specs = _family_specs(args)
    if specs and args.input is not None:
        raise UsageError("give either an input or family options, not both")
    if specs:
        fams = [family_generate(s) for s in specs]
        return [(f.description, f.diagram, f) for f in fams]
    if args.input is None:
        raise UsageError("an input or a family option is required")
    obj = parse_input(_read_input(args.input))
    return [(_describe(obj), obj, None)]


def _budgets(args):
    b = args.budget_crossings
    if b is None:
        return DEFAULT_BUDGET_P, DEFAULT_BUDGET_F
    if len(b) > 2:
        raise UsageError("--budget-crossings takes one value (both) or two (P, F*)")
    return (b[0], b[0]) if len(b) == 1 else (b[0], b[1])


# ---------------------------------------------------------------------------
# verbs

def cmd_convert(args) -> str:
    (desc, obj, _), = _subjects(args)
    target = args.to
    if target == "pd":
        out = as_diagram(obj)
    elif target == "braid":
        if isinstance(obj, BandRepresentation):
            out = obj.word()
        elif isinstance(obj, BraidWord):
            out = obj
        else:
            raise BraidError("only braids and band representations convert to a braid word")
    elif target == "bands":
        if isinstance(obj, Fence):
            out = fence_to_band_rep(obj)
        elif isinstance(obj, BandRepresentation):
            out = obj
        else:
            raise BraidError("only fences and band representations convert to bands")
    elif target == "plat":
        if isinstance(obj, Fence):
            out = fence_to_positive_plat(obj)
        elif isinstance(obj, BraidWord):
            out = braid_as_plat(obj)
        elif isinstance(obj, tuple):
            out = obj
        else:
            raise BraidError("plat conversion needs a braid, plat or fence")
    else:  # fence
        if isinstance(obj, Fence):
            out = obj
        elif isinstance(obj, BandRepresentation):
            out = band_rep_to_fence(obj)
        elif isinstance(obj, BraidWord):
            out = plat_to_fence(*braid_as_plat(obj))
        elif isinstance(obj, tuple):
            out = plat_to_fence(*obj)
        else:
            raise FenceError("a diagram cannot be converted to a fence")
    if args.format == "svg":
        if isinstance(out, LinkDiagram):
            raise RenderError("diagrams are not rendered; convert to a fence, plat or braid")
        return render_svg(out)
    text = _object_text(out)
    if args.format == "tsv":
        return f"{desc}\t{target}\t{text if isinstance(out, Fence) else text.strip()}".replace("\n", " | ") + "\n"
    return json.dumps({"input": desc, "to": target, "result": text}, sort_keys=True) + "\n"


def _object_text(obj) -> str:
    if isinstance(obj, Fence):
        return obj.dumps()
    if isinstance(obj, (BraidWord, BandRepresentation)):
        return obj.to_text()
    if isinstance(obj, tuple):
        return plat_to_text(*obj)
    return to_pd_text(obj)


def cmd_invariant(args) -> str:
    budget_P, budget_F = _budgets(args)
    rows = []
    for desc, obj, _ in _subjects(args):
        d = as_diagram(obj)
        kind = args.kind
        if kind == "P":
            value = homfly_P(d, budget_P)
        elif kind == "R":
            value = r_poly(d, budget_P)
        elif kind == "L":
            value = kauffman_L(d, budget_F)
        elif kind == "F":
            value = kauffman_mod2(d, budget_F)
        elif kind in ("G0", "G1"):
            value = g_poly(d, int(kind[1]), budget_F)
        elif kind == "framed-order":
            value = framed_order(d, budget_P)
        elif kind == "writhe":
            value = fence_writhe(obj) if isinstance(obj, Fence) else writhe(d)
        else:
            value = component_count(d)
        rows.append((desc, kind, value))
    if args.format == "svg":
        raise UsageError("invariant output is json or tsv")
    if args.format == "tsv":
        return "".join(f"{desc}\t{kind}\t{value}\n" for desc, kind, value in rows)
    out = []
    for desc, kind, value in rows:
        entry = {"knot": desc, "kind": kind, "text": str(value)}
        if hasattr(value, "to_json"):
            entry["poly"] = value.to_json()
        else:
            entry["value"] = value
        out.append(entry)
    return "".join(json.dumps(e, sort_keys=True) + "\n" for e in out)


def _reports(args):
    budget_P, budget_F = _budgets(args)
    reports = []
    for desc, obj, fam in _subjects(args):
        kw = dict(slice_flag=args.slice or None, budget_P=budget_P, budget_F=budget_F,
                  framed=args.framed)
        if fam is not None:
            reports.append(fam.report(**kw))
            continue
        fences, braids, diagram = [], [], as_diagram(obj)
        if isinstance(obj, Fence):
            fences.append(obj)
        elif isinstance(obj, BraidWord) and obj.positive:
            braids.append(obj)
            fences.append(plat_to_fence(*braid_as_plat(obj)))
        elif isinstance(obj, tuple) and obj[0].positive:
            fences.append(plat_to_fence(*obj))
        elif isinstance(obj, BandRepresentation) and obj.quasipositive:
            fences.append(band_rep_to_fence(obj))
        reports.append(q_report(desc, diagram, fences, braids, **kw))
    if args.figure:
        from .plotting import bounds_figure

        bounds_figure(reports, args.figure)
    return reports


def _emit_reports(reports, fmt) -> str:
    if fmt == "svg":
        raise UsageError("bounds output is json or tsv; use --figure for a plot")
    if fmt == "tsv":
        for r in reports:
            for w in r.warnings:
                print(f"quasipos: warning: {r.knot}: {w}", file=sys.stderr)
        return TSV_HEADER + "\n" + "".join(r.tsv_row() + "\n" for r in reports)
    return "".join(r.dumps() + "\n" for r in reports)


def cmd_qbounds(args) -> str:
    return _emit_reports(_reports(args), args.format)


def cmd_family(args) -> str:
    if not _family_specs(args):
        raise UsageError("family needs --torus2, --torus, --pretzel, --braid or --family")
    if args.qbounds:
        return _emit_reports(_reports(args), args.format)
    fams = [family_generate(s) for s in _family_specs(args)]
    if args.format == "svg":
        if len(fams) != 1:
            raise UsageError("svg output renders one family member")
        return render_svg(fams[0].fences[0])
    rows = []
    for f in fams:
        rows.append({
            "knot": f.description,
            "plats": [plat_to_text(*p) for p in f.plats],
            "fences": [x.to_json() for x in f.fences],
            "writhe_minus_m": [fence_writhe(x) - fence_m(x) for x in f.fences],
            "positive_braids": [w.to_text() for w in f.positive_braids],
            "diagram": to_pd_text(f.diagram),
        })
    if args.format == "tsv":
        return "knot\tplat\tfence\n" + "".join(
            f"{r['knot']}\t{' | '.join(p.strip().replace(chr(10), ': ') for p in r['plats']) or '-'}"
            f"\t{json.dumps(r['fences'][0], sort_keys=True) if r['fences'] else '-'}\n"
            for r in rows)
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in rows)


def cmd_check(args):
    names = args.only or None
    if names:
        unknown = [n for n in names if n not in CHECKS]
        if unknown:
            raise UsageError(f"unknown checks {unknown}; choose from {sorted(CHECKS)}")
    results = run_checks(names, seed=args.seed)
    if args.format == "json":
        text = "".join(json.dumps(r.to_json(), sort_keys=True) + "\n" for r in results)
    else:
        text = "".join(r.line() + "\n" for r in results)
    return text, all(r.passed for r in results)


def cmd_render(args) -> str:
    specs = _family_specs(args)
    if specs:
        if len(specs) != 1:
            raise UsageError("render draws one object")
        fam = family_generate(specs[0])
        if args.what == "fence":
            return render_svg(fam.fences[0])
        if not fam.plats:
            raise RenderError(f"{fam.description} has no plat realization")
        return render_svg(fam.plats[0])
    (_, obj, _), = _subjects(args)
    return render_svg(obj)


# ---------------------------------------------------------------------------
# parser

def _common(p: argparse.ArgumentParser, fmt_default="json") -> None:
    p.add_argument("--format", choices=("json", "tsv", "svg"), default=fmt_default)
    p.add_argument("--seed", type=int, default=0, help="seed for sampled properties")
    p.add_argument("--cache-entries", type=int, default=None,
                   help="skein memo size per polynomial (0 disables; env QUASIPOS_CACHE_ENTRIES)")
    p.add_argument("--budget-crossings", type=int, nargs="+", default=None, metavar="N",
                   help=f"refuse larger diagrams (default {DEFAULT_BUDGET_P} for P, "
                        f"{DEFAULT_BUDGET_F} for F*); one value sets both")


def _inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", nargs="?", help="path, '-' for stdin, or an inline literal (\\n for newlines)")
    p.add_argument("--family", choices=("torus2", "torus", "pretzel"))
    p.add_argument("-k", type=int, nargs="+", help="family parameters")
    p.add_argument("--torus2", type=int, nargs="+", metavar="K", help="O{2,2k+1} for each K")
    p.add_argument("--torus", type=int, nargs=2, metavar=("M", "N"), help="torus knot o{m,n}")
    p.add_argument("--pretzel", type=int, nargs=3, metavar=("R", "S", "T"))
    p.add_argument("--braid", help="positive braid letters, e.g. '1 2 1 2 1'")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quasipos",
                                     description="Bounds on the modulus of quasipositivity of knots.")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("convert", help="convert between braid, bands, plat, fence and PD")
    _common(p)
    _inputs(p)
    p.add_argument("--to", required=True, choices=("braid", "bands", "plat", "fence", "pd"))

    p = sub.add_parser("invariant", help="compute a polynomial or numeric invariant")
    _common(p)
    _inputs(p)
    p.add_argument("--kind", required=True, choices=INVARIANTS)

    for verb, text in (("qbounds", "report bounds on q(K)"), ("family", "generate family members")):
        p = sub.add_parser(verb, help=text)
        _common(p)
        _inputs(p)
        p.add_argument("--slice", action="store_true", help="assert the knot is slice")
        p.add_argument("--framed", action="store_true", help="also compute the framed-order bound")
        p.add_argument("--figure", help="write a matplotlib figure of the bounds to this path")
        if verb == "family":
            p.add_argument("--qbounds", action="store_true", help="report bounds for each member")

    p = sub.add_parser("check", help="run the seeded property suite")
    _common(p, fmt_default="tsv")
    p.add_argument("--only", nargs="+", metavar="NAME", help=f"subset of {', '.join(CHECKS)}")

    p = sub.add_parser("render", help="deterministic SVG of a fence, braid, plat or bands")
    _common(p, fmt_default="svg")
    _inputs(p)
    p.add_argument("--what", choices=("fence", "plat"), default="fence",
                   help="for families: which realization to draw")
    return parser


VERBS = {
    "convert": cmd_convert,
    "invariant": cmd_invariant,
    "qbounds": cmd_qbounds,
    "family": cmd_family,
    "render": cmd_render,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cache_entries is not None:
        if args.cache_entries < 0:
            parser.error("--cache-entries must be non-negative")
        set_cache_entries(args.cache_entries)
    try:
        if args.verb == "check":
            text, ok = cmd_check(args)
            sys.stdout.write(text)
            return 0 if ok else 1
        text = VERBS[args.verb](args)
    except UsageError as exc:
        parser.error(str(exc))
    except DOMAIN_ERRORS + (ValueError,) as exc:
        print(f"quasipos: error: {exc}", file=sys.stderr)
        return 1
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
