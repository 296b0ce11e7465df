"""
Command line front end.

Exit codes: 0 success, 1 an invariant check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import List, Optional

from . import corpus
from . import invariants as inv
from .braid import VirtualBraid
from .errors import InputError, InvariantViolation
from .groupword import parse_representation
from .presentation import delta_ell, parse_presentation, quotient_specialize
from .repsearch import DEFAULT_CAP, check_braid_compatible, compatible_reps, enumerate_reps, extend_by_definitions

CAP_ENV = "VALEX_REP_CAP"


def _read(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _braid(arg: str) -> VirtualBraid:
    text = _read(arg) if os.path.isfile(arg) else arg
    return corpus.load_braid_text(text)


def _source(args):
    given = [x for x in (args.braid, args.pres, args.corpus) if x]
    if len(given) != 1:
        raise InputError("give exactly one of --braid, --pres, --corpus")
    if args.braid:
        return _braid(args.braid)
    if args.pres:
        return parse_presentation(_read(args.pres), os.path.basename(args.pres))
    entry = corpus.lookup(args.corpus)
    if entry.braid is not None and (args.prefer_braid or not entry.presentations):
        return entry.braid
    if entry.presentations:
        return entry.presentations[0]
    raise InputError(f"corpus entry {entry.name} has no input")


def _braid_source(args) -> VirtualBraid:
    args.prefer_braid = True
    src = _source(args)
    if not isinstance(src, VirtualBraid):
        raise InputError("this command needs a braid")
    return src


def _rep(args, src):
    if args.rep:
        rho = parse_representation(_read(args.rep))
    elif args.corpus and corpus.lookup(args.corpus).representation is not None:
        rho = corpus.lookup(args.corpus).representation
    else:
        raise InputError("this command needs --rep")
    if not isinstance(src, VirtualBraid):
        rho = extend_by_definitions(src, rho)
    return rho


def _emit(args, text: str, data) -> None:
    if args.json:
        sys.stdout.write(json.dumps(data, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


# subcommands


def cmd_alex(args) -> int:
    src = _source(args)
    res = inv.h_poly(src)
    if args.classicality:
        rep = inv.classicality_report(src)
        _emit(args, res.to_text() + rep.to_text(), {"result": res.to_json(), "classicality": rep.to_json()})
    else:
        _emit(args, res.to_text(), res.to_json())
    return 0


def cmd_normalized(args) -> int:
    res = inv.normalized_h(_braid_source(args))
    _emit(args, res.to_text(), res.to_json())
    return 0


def cmd_ideals(args) -> int:
    src = _source(args)
    levels = [args.level] if args.level is not None else [0, 1, 2]
    lines, data = [], []
    for ell in levels:
        rep = inv.ideals(src, ell)
        lines.append(f"Delta^{ell} = {inv.normalize_canonical(rep.delta, inv.FULL)}  ({rep.minor_size}-minors, {len(rep.generators)} distinct)")
        data.append({"level": ell, "minor_size": rep.minor_size, "delta": inv.normalize_canonical(rep.delta, inv.FULL).to_text(),
                     "generators": len(rep.generators)})
    _emit(args, "\n".join(lines) + "\n", data)
    return 0


def cmd_twisted(args) -> int:
    src = _source(args)
    rho = _rep(args, src)
    if args.normalized:
        if not isinstance(src, VirtualBraid):
            raise InputError("--normalized needs a braid")
        res = inv.normalized_twisted_h(src, rho)
    else:
        res = inv.twisted_h(src, rho)
    text = res.to_text()
    data = res.to_json()
    if not isinstance(src, VirtualBraid):
        w = inv.wada_quotient(src, rho)
        text += f"Wada quotient (column {w.column}, denominator {w.denominator}) agrees\n"
        data["wada"] = {"column": w.column, "denominator": w.denominator.to_text(), "quotient": w.quotient.to_text()}
    _emit(args, text, data)
    return 0


def cmd_bounds(args) -> int:
    src = _source(args)
    if args.rep:
        rho = _rep(args, src)
        res = inv.normalized_twisted_h(src, rho) if args.normalized else inv.twisted_h(src, rho)
    elif args.normalized:
        if not isinstance(src, VirtualBraid):
            raise InputError("--normalized needs a braid")
        res = inv.normalized_h(src)
    else:
        res = inv.h_poly(src)
    rep = inv.crossing_bounds(res)
    _emit(args, res.to_text() + rep.to_text(), {"result": res.to_json(), "bounds": rep.to_json()})
    return 0


def cmd_skein(args) -> int:
    beta = _braid_source(args)
    if args.pos is None:
        positions = [i for i, (k, _) in enumerate(beta.letters) if k != "v"]
    else:
        positions = [args.pos - 1]
    reports = [inv.skein_check(beta, i) for i in positions]
    text = "".join(r.to_text().replace(f"position {r.position}", f"position {r.position + 1}", 1) for r in reports)
    data = [dict(r.to_json(), position=r.position + 1) for r in reports]
    _emit(args, text, data)
    return 0 if all(r.holds for r in reports) else 1


def cmd_markov_fuzz(args) -> int:
    beta = _braid_source(args)
    rho = parse_representation(_read(args.rep)) if args.rep else None
    if rho is not None:
        bad = check_braid_compatible(beta, rho)
        if not bad.compatible:
            raise InputError("representation is not fixed by the braid: " + bad.to_text().strip())
    script = inv.markov_script(beta, args.moves, args.seed, rho)
    failed = [c for c in script if not c.holds]
    lines = [c.to_text() for c in script]
    if failed:
        lines.append(f"{len(failed)} move(s) broke their factor law; replay with --seed {args.seed} --moves {args.moves}")
        lines.append("script:")
        lines.extend(f"  {i + 1}. {c.move}" for i, c in enumerate(script))
    else:
        lines.append(f"all {len(script)} moves satisfy their factor laws")
    data = {"seed": args.seed, "moves": [{"move": c.move, "holds": c.holds, "after": c.after.to_text()} for c in script]}
    _emit(args, "\n".join(lines) + "\n", data)
    return 1 if failed else 0


def cmd_rep_search(args) -> int:
    src = _source(args)
    cap = args.cap or int(os.environ.get(CAP_ENV, DEFAULT_CAP))
    if isinstance(src, VirtualBraid):
        reps = compatible_reps(src, args.group, args.n, args.p, cap=cap)
    else:
        reps = enumerate_reps(src, args.group, args.n, args.p, cap=cap, dedupe=args.dedupe)
    text = f"{len(reps)} representation(s) into {args.group.upper()}({args.n}, F_{args.p})\n"
    text += "".join("\n" + r.to_text() for r in reps)
    data = {"count": len(reps), "representations": [r.to_text() for r in reps]}
    _emit(args, text, data)
    return 0


def cmd_quotient(args) -> int:
    src = _source(args)
    if isinstance(src, VirtualBraid):
        from .braid import closure_presentation

        src = closure_presentation(src)
    quo = quotient_specialize(src, args.kind)
    d0 = inv.normalize_canonical(delta_ell(quo, 0).delta, inv.FULL)
    d1 = inv.normalize_canonical(delta_ell(quo, 1).delta, inv.FULL)
    text = quo.to_text() + f"Delta^0 = {d0}\nDelta^1 = {d1}\n"
    _emit(args, text, {"presentation": quo.to_text(), "delta0": d0.to_text(), "delta1": d1.to_text()})
    return 0


def cmd_table(args) -> int:
    chosen = [corpus.lookup(n) for n in args.entry] if args.entry else list(corpus.entries())
    lines = []
    for e in chosen:
        lines.extend(corpus.replay(e))
    bad = [l for l in lines if not l.passed]
    text = "\n".join(l.to_text() for l in lines) + f"\n{len(lines) - len(bad)}/{len(lines)} checks passed\n"
    data = [{"entry": l.entry, "check": l.check, "passed": l.passed, "detail": l.detail} for l in lines]
    _emit(args, text, data)
    return 1 if bad else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="valex", description="Virtual Alexander invariants of virtual knots.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, fn, help, braid_only=False):
        p = sub.add_parser(name, help=help)
        p.add_argument("--braid", help="braid file or inline word such as 'k=3 b2 v2 B1'")
        if not braid_only:
            p.add_argument("--pres", help="presentation file")
        p.add_argument("--corpus", help="name of a bundled knot")
        p.add_argument("--json", action="store_true", help="machine readable output")
        p.set_defaults(fn=fn, pres=None, prefer_braid=False)
        return p

    p = add("alex", cmd_alex, "virtual Alexander polynomial H")
    p.add_argument("--classicality", action="store_true", help="also report obstructions to being classical")
    add("normalized", cmd_normalized, "normalized polynomial of a braid", braid_only=True)
    p = add("ideals", cmd_ideals, "elementary ideals Delta^l")
    p.add_argument("--level", type=int)
    p = add("twisted", cmd_twisted, "twisted polynomial for a representation")
    p.add_argument("--rep", help="representation file")
    p.add_argument("--normalized", action="store_true")
    p = add("bounds", cmd_bounds, "lower bounds on the virtual crossing number")
    p.add_argument("--rep")
    p.add_argument("--normalized", action="store_true")
    p = add("skein", cmd_skein, "check the skein relation at a classical letter", braid_only=True)
    p.add_argument("--pos", type=int, help="1-based letter position; all classical letters if omitted")
    p = add("markov-fuzz", cmd_markov_fuzz, "random Markov moves with exact factor checks", braid_only=True)
    p.add_argument("--moves", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--rep", help="representation fixed by the braid, for twisted checks")
    p = add("rep-search", cmd_rep_search, "enumerate finite field representations")
    p.add_argument("--group", default="SL", help="SL or GL")
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--cap", type=int, help=f"search space limit (default {DEFAULT_CAP}, or ${CAP_ENV})")
    p.add_argument("--dedupe", action="store_true", help="one representative per conjugacy class")
    p = add("quotient", cmd_quotient, "welded, extended or quandle quotient")
    p.add_argument("--kind", choices=("welded", "extended", "quandle"), required=True)
    p = sub.add_parser("table", help="replay every bundled expected value")
    p.add_argument("entry", nargs="*")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_table)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
