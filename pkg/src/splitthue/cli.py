"""Command-line interface: ``splitthue check | solve | verify <kind>``.

Exit status is 0 when every check passes, 2 when there are findings, and 1
for usage or configuration errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import reporting
from .config import RunConfig, builtin_family, load_family, parse_n_range
from .errors import FamilyFileError, SplitThueError
from .pipelines import VERIFY_KINDS, PipelineResult, run_check, run_solve, run_verify

EXIT_OK, EXIT_USAGE, EXIT_FINDINGS = 0, 1, 2
BUILTINS = ("t1", "fib_lucas")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _family(spec: str):
    if not Path(spec).exists() and spec.replace("-", "_") in BUILTINS:
        return builtin_family(spec.replace("-", "_"))
    return load_family(spec)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="splitthue", description="Split Thue families with linear recurrence factors.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, n_required=False):
        sp.add_argument("--family", required=True,
                        help="family TOML file, or a built-in name (t1, fib_lucas)")
        sp.add_argument("--n", dest="n_range", required=n_required, help="inclusive range a..b")
        sp.add_argument("--precision", type=int, default=None, help="working precision in bits")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    common(sub.add_parser("check", help="certify the growth conditions"))
    sp = sub.add_parser("solve", help="solve f_n(x, y) = +-1 for |y| <= ymax")
    common(sp, n_required=True)
    sp.add_argument("--ymax", type=int, default=1000)
    sp.add_argument("--strategy", choices=("root", "exhaustive"), default="root")
    sp = sub.add_parser("verify", help="run one verification pipeline")
    sp.add_argument("kind", choices=VERIFY_KINDS)
    common(sp)
    sp.add_argument("--pohst-c", type=float, default=0.01, help="regulator lower-bound constant")
    sp.add_argument("--baker-c", type=float, default=None,
                    help="linear-form constant (default: Baker-Wustholz value)")
    return p


def _config(a) -> RunConfig:
    cmd = a.command if a.command != "verify" else f"verify {a.kind}"
    n_range = parse_n_range(a.n_range) if a.n_range else range(0, 1)
    prec = a.precision if a.precision is not None else 256
    return RunConfig(a.family, cmd, n_range, getattr(a, "ymax", 1000), prec, getattr(a, "pohst_c", 0.01),
                     getattr(a, "baker_c", None), a.out, a.fmt, a.jobs, getattr(a, "strategy", "root"))


def _emit(res: PipelineResult, cfg: RunConfig) -> None:
    if cfg.fmt == "json":
        text = reporting.dumps(res.as_dict(), res.kind)
        if cfg.out:
            reporting.write_text(cfg.out, text)
        else:
            sys.stdout.write(text)
        return
    samples = reporting.csv_text(res.rows)
    fits = reporting.csv_text(res.fit_rows + [{"series": "check", **c} for c in res.checks])
    if cfg.out:
        out = Path(cfg.out)
        reporting.write_text(out, samples)
        reporting.write_text(out.with_name(out.stem + ".fits.csv"), fits)
    else:
        sys.stdout.write(samples)
    if res.findings:
        sys.stderr.write(json.dumps({"findings": reporting.plain(res.findings)}, sort_keys=True) + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = _config(args)
        family = _family(cfg.family_path)
        if args.command == "check":
            res = run_check(family, args.precision or 128)
        elif args.command == "solve":
            res = run_solve(family, cfg.n_range, cfg.y_max, cfg.strategy, cfg.jobs)
        else:
            res = run_verify(args.kind, family, cfg.n_range if args.n_range else None, args.precision,
                             jobs=cfg.jobs, pohst_c=cfg.pohst_c, baker_c=cfg.baker_c)
    except (FamilyFileError, ValueError, SplitThueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    _emit(res, cfg)
    if res.findings:
        print(f"{len(res.findings)} finding(s)", file=sys.stderr)
        return EXIT_FINDINGS
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
