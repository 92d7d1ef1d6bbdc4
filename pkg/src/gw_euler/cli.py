"""Command-line surface: reproducible transcripts for every computation.

Exit codes: 0 success, 1 usage errors, 2 domain errors (with a
machine-readable error object on stdout).  Text mode prints the result
on stdout and the run manifest on stderr; JSON mode embeds the manifest
in the payload.  Identical manifests produce byte-identical stdout.
"""

import argparse
import json
import sys
import time
from dataclasses import dataclass

from . import __version__
from .degree import consistency_report, global_degree
from .enumerative import (PlaneConfig, euler_lines, euler_o_n,
                          reference_lines_config, stacky_lines_class,
                          stacky_report)
from .errors import GwError
from .fields import field_to_json, make_extension, parse_field_flag
from .gw import gw_invariants, parse_gw
from .polys import parse_system
from .quadform import gram_to_class, trace_form
from .scheja_storch import ss_form
from .fp_verifier import draw_plane_config, splitmix64, verify_lines_class


@dataclass
class RunManifest:
    command: str
    version: str
    field: str
    seed: int | None
    order: str
    mode: str

    def to_json(self):
        return {"command": self.command, "version": self.version,
                "field": self.field, "seed": self.seed,
                "order": self.order, "mode": self.mode}


def _field(args):
    return parse_field_flag(getattr(args, "field", "Q") or "Q")


def _manifest(args):
    return RunManifest(command=args.command, version=__version__,
                       field=getattr(args, "field", "Q") or "Q",
                       seed=getattr(args, "seed", None),
                       order=getattr(args, "order", "degrevlex"),
                       mode=getattr(args, "mode", "scharlau"))


def _invariants_json(cls):
    if cls.ctx.kind in ("Q", "Fp"):
        return gw_invariants(cls).to_json()
    return {"rank": cls.rank}


def _cmd_simplify(args):
    ctx = _field(args)
    cls = parse_gw(args.expr, ctx)
    return cls.render(), {"class": cls.render(), "json": cls.to_json(),
                          "invariants": _invariants_json(cls)}


def _cmd_degree(args):
    ctx = _field(args)
    system = parse_system(args.system, ctx)
    value = None
    if args.value:
        value = [ctx.parse(v) for v in args.value.split(",")]
    cls = global_degree(system, value, order=args.order)
    return cls.render(), {"class": cls.render(), "json": cls.to_json(),
                          "invariants": _invariants_json(cls)}


def _cmd_ss(args):
    ctx = _field(args)
    system = parse_system(args.system, ctx)
    result = ss_form(system, order=args.order)
    report = result.report()
    text = f"{report['class']}  (dim {report['dim']})"
    return text, report


def _cmd_trace_form(args):
    ctx = _field(args)
    algebra = make_extension(ctx, args.modulus)
    elem = algebra.parse(args.elem)
    gram = trace_form(algebra, elem)
    cls = gram_to_class(gram)
    text = f"{cls.render()}  over {algebra.describe()}"
    return text, {"algebra": field_to_json(algebra),
                  "irreducibility": algebra.irreducibility,
                  "gram": gram.to_json(),
                  "class": cls.render(),
                  "invariants": _invariants_json(cls)}


def _cmd_consistency(args):
    ctx = _field(args)
    system = parse_system(args.system, ctx)
    value = None
    if args.value:
        value = [ctx.parse(v) for v in args.value.split(",")]
    report = consistency_report(system, value)
    text = (f"{report.verdict}: sum = {report.local_sum.render()}, "
            f"global = {report.global_class.render()}")
    return text, report.to_json()


def _cmd_o_n(args):
    sign = 1 if args.sign in ("+1", "1") else -1
    cls = euler_o_n(args.n, sign, args.mode)
    return cls.render(), {"n": args.n, "sign": sign, "mode": args.mode,
                          "class": cls.render(),
                          "invariants": _invariants_json(cls)}


def _cmd_o_n_stacky(args):
    per_sign = stacky_report(args.n, args.mode)
    cls = per_sign["class_plus"]
    data = {"n": args.n, "mode": args.mode, "class": cls.render(),
            "class_other_sign": per_sign["class_minus"].render(),
            "section_independent":
                per_sign["class_plus"] == per_sign["class_minus"],
            "invariants": _invariants_json(cls)}
    return cls.render(), data


def _load_planes(args, ctx):
    if getattr(args, "planes", None):
        with open(args.planes, encoding="utf-8") as handle:
            return PlaneConfig.from_json(json.load(handle), ctx)
    if ctx.kind == "Fp":
        seed = args.seed if args.seed is not None else 42
        return draw_plane_config(ctx.p, splitmix64(seed))
    return reference_lines_config(ctx)


def _cmd_lines(args):
    field_flag = args.field or "Q"
    if field_flag.lower() == "fp" and args.p:
        field_flag = f"fp:{args.p}"
        args.field = field_flag
    ctx = parse_field_flag(field_flag)
    config = _load_planes(args, ctx)
    if args.swap_first_pair:
        config = config.swap_pair(0)
    result = euler_lines(config, order=args.order)
    report = result.report()
    report["config"] = config.to_json()
    try:
        report["stacky_class"] = stacky_lines_class(result).render()
    except GwError:
        report["stacky_class"] = None
    text = (f"{report['class']}  (dim {report['dim']}, "
            f"swapped {report['swapped_class']})")
    return text, report


def _cmd_verify_lines(args):
    seed = args.seed if args.seed is not None else 42
    report = verify_lines_class(args.p, seed, args.trials)
    lines = []
    for t in report.trials:
        if t.degenerate:
            lines.append(f"trial {t.seed_index}: degenerate (reseeded)")
        else:
            lines.append(
                f"trial {t.seed_index}: dim={t.dim} "
                f"class={t.detail['class']} swapped_disc={t.detail['swapped_disc']} "
                f"points={t.detail['rational_points']}/{t.detail['incident_lines']} "
                f"{'PASS' if t.passed else 'FAIL'}")
    lines.append(f"{report.passes}/{report.completed} non-degenerate trials passed")
    return "\n".join(lines), report.to_json()


_HANDLERS = {
    "simplify": _cmd_simplify,
    "degree": _cmd_degree,
    "ss": _cmd_ss,
    "trace-form": _cmd_trace_form,
    "consistency": _cmd_consistency,
    "o-n": _cmd_o_n,
    "o-n-stacky": _cmd_o_n_stacky,
    "lines-p4": _cmd_lines,
    "verify-lines": _cmd_verify_lines,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="gw-euler",
        description="Exact Grothendieck-Witt Euler classes and A1-degrees")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, field=True, order=True, mode=False, seed=False):
        p.add_argument("--json", action="store_true",
                       help="emit a JSON report")
        if field:
            p.add_argument("--field", default="Q",
                           help="Q | fp:<p> | ext:<json-file>")
        if order:
            p.add_argument("--order", default="degrevlex",
                           choices=["degrevlex", "lex"])
        if mode:
            p.add_argument("--mode", default="scharlau",
                           choices=["scharlau", "naive"])
        if seed:
            p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("simplify", help="simplify a GW expression")
    p.add_argument("expr")
    common(p, order=False)

    p = sub.add_parser("degree", help="global A1-degree of a system")
    p.add_argument("--system", required=True,
                   help="';'-separated polynomials")
    p.add_argument("--value", default=None, help="comma-separated target")
    common(p)

    p = sub.add_parser("ss", help="full Scheja-Storch report for a system")
    p.add_argument("--system", required=True)
    common(p)

    p = sub.add_parser("trace-form", help="trace form of <a> along an extension")
    p.add_argument("--modulus", required=True, help="monic polynomial in t")
    p.add_argument("--elem", required=True, help="element, polynomial in t")
    common(p, order=False)

    p = sub.add_parser("consistency",
                       help="sum of local indices vs global degree")
    p.add_argument("--system", required=True)
    p.add_argument("--value", default=None)
    common(p)

    p = sub.add_parser("o-n", help="Euler number of O(n) on P^1")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--sign", default="+1", choices=["+1", "-1", "1"])
    common(p, field=False, order=False, mode=True)

    p = sub.add_parser("o-n-stacky",
                       help="section-independent Euler number on the chart")
    p.add_argument("--n", type=int, required=True)
    common(p, field=False, order=False, mode=True)

    p = sub.add_parser("lines-p4", help="lines meeting 6 planes in P^4")
    p.add_argument("--p", type=int, default=None)
    p.add_argument("--planes", default=None, help="JSON configuration file")
    p.add_argument("--swap-first-pair", action="store_true")
    common(p, seed=True)

    p = sub.add_parser("verify-lines",
                       help="brute-force cross-check over F_p")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--trials", type=int, default=5)
    common(p, field=False, order=False, seed=True)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 1
    start = time.monotonic()
    try:
        text, payload = _HANDLERS[args.command](args)
    except GwError as exc:
        error = {"error": {"type": type(exc).__name__, "message": str(exc)},
                 "manifest": _manifest(args).to_json()}
        print(json.dumps(error, sort_keys=True))
        return 2
    except (ValueError, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    manifest = _manifest(args)  # after the handler: flags are normalized
    elapsed_ms = int((time.monotonic() - start) * 1000)
    if args.json:
        print(json.dumps({"manifest": manifest.to_json(), **payload},
                         sort_keys=True, default=str))
    else:
        print(text)
    print(json.dumps({"manifest": manifest.to_json(),
                      "timing_ms": elapsed_ms}, sort_keys=True),
          file=sys.stderr)
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
