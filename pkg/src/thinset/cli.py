"""Command-line front end: ``thinset <subcommand> ...``.

Every invocation writes one report document (json, csv or text).  Exit status is
0 on success, 1 on a domain error and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import csv
import enum
import io
import json
import sys
from fractions import Fraction

from . import __version__
from .bwlab import (FAMILIES, bits_str, branch_chain, build_ar_set, case1_blocks, parse_bits,
                    verify_tree_conditions)
from .constructions import (certify, cover_indices, gallery, gallery_listing, merge_super_thin,
                            merge_very_thin_super_thin, split_into_super_thin,
                            thin_intersection_cover)
from .convergence import MODES, convergence_report, sequence
from .density import (density_profile, doubling_checkpoints, exact_density,
                      uniform_density_profile)
from .errors import ThinsetError
from .setmodel import certificate_blocks, enumerate_upto, parse_set_expr
from .thinness import (ALL_CLASSES, BlockDecomposition, ThinClass, check_hierarchy, classify,
                       greedy_block_decomposition, run_statistic)


class UsageError(Exception):
    pass


def jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(jsonable(k)): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [jsonable(v) for v in items]
    if isinstance(obj, float) and obj == float("inf"):
        return "inf"
    return obj


def _int(text):
    text = text.strip()
    try:
        if "^" in text:
            base, exp = text.split("^")
            return int(base) ** int(exp)
        value = Fraction(text)
        if value.denominator != 1:
            raise ValueError
        return int(value)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None


def _rational(text):
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not an integer or p/q rational: {text!r}") from None


def _int_list(text):
    return [_int(t) for t in text.split(",") if t.strip()]


def _rational_list(text):
    return [_rational(t) for t in text.split(",") if t.strip()]


def _load_set(args):
    if getattr(args, "gallery", None):
        return gallery(args.gallery)
    if not getattr(args, "set", None):
        raise UsageError("one of --set or --gallery is required")
    return certify(parse_set_expr(args.set))


def _blocks_records(decomp: BlockDecomposition):
    gaps = decomp.inter_block_gaps
    return [{"index": i, "block": list(b), "size": len(b),
             "gap_to_next": gaps[i - 1] if i - 1 < len(gaps) else None}
            for i, b in enumerate(decomp.blocks, start=1)]


def _decomp_summary(decomp: BlockDecomposition):
    return {"blocks": len(decomp.blocks), "block_size_max": decomp.block_size_max,
            "M_param": decomp.M_param, "horizon": decomp.horizon}


# -- subcommands: each returns (summary, records) ----------------------------

def cmd_classify(args):
    expr = _load_set(args)
    classes = ALL_CLASSES if args.all or not args.cls else [ThinClass.parse(c) for c in args.cls]
    prefix = enumerate_upto(expr, args.horizon)
    memo: dict = {}
    verdicts = {c: classify(expr, c, args.horizon, args.m_grid,
                            use_certificates=not args.empirical, prefix=prefix, _memo=memo)
                for c in classes}
    if not args.empirical:
        check_hierarchy(verdicts)
    records = [{"set": str(expr), "class": v.cls, "status": v.status, "horizon": v.horizon,
                "evidence": v.evidence} for v in verdicts.values()]
    return {"set": str(expr), "horizon": args.horizon, "elements": len(prefix)}, records


def cmd_density(args):
    expr = _load_set(args)
    prefix = enumerate_upto(expr, args.horizon)
    cps = args.checkpoints or doubling_checkpoints(args.horizon)
    prof = density_profile(prefix, cps)
    d = exact_density(expr)
    summary = {"set": str(expr), "horizon": args.horizon,
               "liminf_estimate": prof.liminf_estimate, "limsup_estimate": prof.limsup_estimate,
               "exact_density": d if d is not None else "unavailable"}
    records = [{"n": n, "ratio": r} for n, r in zip(prof.checkpoints, prof.ratios)]
    return summary, records


def cmd_udensity(args):
    expr = _load_set(args)
    prefix = enumerate_upto(expr, args.horizon)
    ks = args.k or doubling_checkpoints(max(1, args.horizon // 8))
    prof = uniform_density_profile(prefix, ks, args.burn_in)
    summary = {"set": str(expr), "horizon": args.horizon, "burn_in": prof.burn_in,
               "sup_nonincreasing": prof.sup_nonincreasing}
    records = [{"k": k, "sup_window_avg": s, "inf_window_avg": i}
               for k, s, i in zip(prof.k_values, prof.sup_window_avg, prof.inf_window_avg)]
    return summary, records


def cmd_decompose(args):
    expr = _load_set(args)
    prefix = enumerate_upto(expr, args.horizon)
    decomp = greedy_block_decomposition(prefix, args.M)
    summary = _decomp_summary(decomp)
    summary.update(set=str(expr), run_statistic=run_statistic(prefix, args.M))
    return summary, _blocks_records(decomp)


def _s_decomposition(expr, prefix, M):
    blocks = certificate_blocks(expr, prefix.horizon)
    if blocks is not None:
        clipped = tuple(t for t in (tuple(v for v in b if v <= prefix.horizon) for b in blocks) if t)
        return BlockDecomposition(clipped, None, prefix.horizon)
    return greedy_block_decomposition(prefix, M)


def cmd_merge(args):
    S_expr = certify(parse_set_expr(args.s))
    T_expr = certify(parse_set_expr(args.t))
    S = enumerate_upto(S_expr, args.horizon)
    T = enumerate_upto(T_expr, args.horizon)
    if args.lemma == 1:
        decomp = merge_super_thin(S, T, args.horizon)
        bound = 3
    else:
        sdec = _s_decomposition(S_expr, S, args.M)
        decomp = merge_very_thin_super_thin(sdec, T, args.horizon)
        bound = 2 * sdec.block_size_max + 1
    summary = _decomp_summary(decomp)
    union = sorted(set(S.elements) | set(T.elements))
    summary.update(lemma=args.lemma, size_bound=bound,
                   union_preserved=list(decomp.elements()) == union)
    return summary, _blocks_records(decomp)


def cmd_split(args):
    expr = _load_set(args)
    prefix = enumerate_upto(expr, args.horizon)
    decomp = _s_decomposition(expr, prefix, args.M) if args.use_certificate \
        else greedy_block_decomposition(prefix, args.M)
    parts = split_into_super_thin(decomp)
    union = sorted(v for p in parts for v in p.elements)
    summary = {"set": str(expr), "parts": len(parts),
               "union_preserved": union == list(prefix.elements)}
    records = [{"part": i, "size": len(p), "elements": list(p.elements)}
               for i, p in enumerate(parts, start=1)]
    return summary, records


def cmd_cover(args):
    expr = _load_set(args)
    S = enumerate_upto(expr, args.horizon)
    A, B = thin_intersection_cover(S, args.horizon)
    summary = {"set": str(expr), "indices": cover_indices(S),
               "intersection_equals_set": sorted(set(A.elements) & set(B.elements)) == list(S.elements),
               "run_statistic_A": run_statistic(A, 1), "run_statistic_B": run_statistic(B, 1)}
    records = [{"name": "A'", "elements": list(A.elements)},
               {"name": "B'", "elements": list(B.elements)}]
    return summary, records


def cmd_converge(args):
    seq = sequence(args.seq)
    modes = args.modes or list(MODES)
    reports = convergence_report(seq, args.limit, args.eps, args.horizon, modes, args.m_grid)
    records = []
    for r in reports:
        for mode, c in r.modes.items():
            records.append({"eps": r.epsilon, "mode": mode, "convergent": c["convergent"],
                            "class": c["class"], "status": c["status"], "horizon": r.horizon,
                            "exceedance_count": len(r.exceedance)})
    return {"sequence": args.seq, "limit": args.limit, "horizon": args.horizon}, records


def cmd_gallery(args):
    records = [{"name": n, "expr": e, "description": d} for n, e, d in gallery_listing()]
    return {"count": len(records)}, records


def cmd_bw(args):
    family = FAMILIES[args.family]
    if args.bw_cmd == "verify":
        rep = verify_tree_conditions(family, args.depth, args.horizon)
        summary = {"family": family.name, "depth": rep.depth, "horizon": rep.horizon,
                   "nodes_checked": rep.nodes_checked, "passed": rep.passed,
                   **{c: rep.passed_condition(c) for c in ("S1", "S2", "S3")}}
        records = [{"condition": v.condition, "node": bits_str(v.node), "witness": v.witness}
                   for v in rep.violations]
        return summary, records
    x = parse_bits(args.x)
    if args.bw_cmd == "branch":
        records = [{"j": j, "node": str(p), "difference": str(d)}
                   for j, (p, d) in enumerate(branch_chain(x, family))]
        return {"family": family.name, "x": args.x}, records
    if args.bw_cmd == "ar":
        ar = build_ar_set(x, args.indices, args.horizon, family)
        return ({"x": args.x, "indices": args.indices, "size": len(ar)},
                [{"n": v} for v in ar.elements])
    blocks = case1_blocks(family, x, args.M, args.horizon)
    flat = [v for b in blocks for v in b]
    return ({"family": family.name, "x": args.x, "M": args.M, "size": len(flat)},
            [{"j": j, "block": list(b)} for j, b in enumerate(blocks)])


# -- parser and rendering ----------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser():
    p = _Parser(prog="thinset", description="Thin subsets of the natural numbers.")
    p.add_argument("--version", action="version", version=f"thinset {__version__}")
    p.add_argument("--format", choices=("json", "csv", "text"), default="json")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def with_set(sp, horizon=True):
        sp.add_argument("--set", help="set expression, e.g. 'union(pow(2),pow2plus1)'")
        sp.add_argument("--gallery", help="gallery name (see 'gallery list')")
        if horizon:
            sp.add_argument("--horizon", type=_int, required=True)
        sp.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
        return sp

    sp = with_set(sub.add_parser("classify", help="thinness verdicts"))
    sp.add_argument("--class", dest="cls", action="append")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--m-grid", type=_int_list)
    sp.add_argument("--empirical", action="store_true", help="ignore certificates")
    sp.set_defaults(func=cmd_classify)

    sp = with_set(sub.add_parser("density", help="A(n)/n profile"))
    sp.add_argument("--checkpoints", type=_int_list)
    sp.set_defaults(func=cmd_density)

    sp = with_set(sub.add_parser("udensity", help="window (uniform) density profile"))
    sp.add_argument("--k", type=_int_list)
    sp.add_argument("--burn-in", type=_int)
    sp.set_defaults(func=cmd_udensity)

    sp = with_set(sub.add_parser("decompose", help="greedy block decomposition"))
    sp.add_argument("--M", type=_int, default=1)
    sp.set_defaults(func=cmd_decompose)

    sp = sub.add_parser("merge", help="merge super thin / very thin sets into blocks")
    sp.add_argument("--lemma", type=int, choices=(1, 2), required=True)
    sp.add_argument("--s", required=True)
    sp.add_argument("--t", required=True)
    sp.add_argument("--horizon", type=_int, required=True)
    sp.add_argument("--M", type=_int, default=1, help="greedy threshold for S without block certificate")
    sp.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_merge)

    sp = with_set(sub.add_parser("split", help="split a very thin set into super thin parts"))
    sp.add_argument("--M", type=_int, default=1)
    sp.add_argument("--use-certificate", action="store_true")
    sp.set_defaults(func=cmd_split)

    sp = with_set(sub.add_parser("cover", help="super thin set as intersection of two non very thin sets"))
    sp.set_defaults(func=cmd_cover)

    sp = sub.add_parser("converge", help="ideal convergence of a sequence")
    sp.add_argument("--seq", required=True)
    sp.add_argument("--limit", type=_rational, required=True)
    sp.add_argument("--eps", type=_rational_list, required=True)
    sp.add_argument("--horizon", type=_int, required=True)
    sp.add_argument("--modes", type=lambda s: [m for m in s.split(",") if m])
    sp.add_argument("--m-grid", type=_int_list)
    sp.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser("gallery", help="named example sets")
    sp.add_argument("action", choices=("list",))
    sp.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
    sp.set_defaults(func=cmd_gallery)

    bw = sub.add_parser("bw", help="binary tree families")
    bsub = bw.add_subparsers(dest="bw_cmd", required=True, parser_class=_Parser)
    for name in ("verify", "branch", "ar", "case1"):
        b = bsub.add_parser(name)
        b.add_argument("--family", choices=sorted(FAMILIES), default="dyadic")
        b.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)
        if name == "verify":
            b.add_argument("--depth", type=_int, required=True)
        else:
            b.add_argument("--x", required=True, help="bit string, e.g. 010")
        if name in ("verify", "ar", "case1"):
            b.add_argument("--horizon", type=_int, required=True)
        if name == "ar":
            b.add_argument("--indices", type=_int_list, required=True)
        if name == "case1":
            b.add_argument("--M", type=_int, default=1)
        b.set_defaults(func=cmd_bw)
    return p


def render(doc, fmt):
    if fmt == "json":
        return json.dumps(jsonable(doc), indent=2, ensure_ascii=False) + "\n"
    records = jsonable(doc["records"])
    if fmt == "csv":
        buf = io.StringIO()
        cols = []
        for r in records:
            cols += [k for k in r if k not in cols]
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        for r in records:
            w.writerow({k: json.dumps(v) if isinstance(v, (list, dict)) else v
                        for k, v in r.items()})
        return buf.getvalue()
    lines = [f"# {' '.join(doc['command'])}", f"# thinset {doc['version']}"]
    lines += [f"{k}: {json.dumps(v, ensure_ascii=False)}"
              for k, v in jsonable(doc["summary"]).items()]
    for r in records:
        lines.append("  " + "  ".join(
            f"{k}={json.dumps(v, ensure_ascii=False) if isinstance(v, (list, dict)) else v}"
            for k, v in r.items()))
    return "\n".join(lines) + "\n"


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        summary, records = args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=err)
        return 2
    except ThinsetError as e:
        print(f"error: {e}", file=err)
        return 1
    doc = {"command": ["thinset"] + argv, "version": __version__,
           "summary": summary, "records": records}
    out.write(render(doc, getattr(args, "format", "json")))
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
