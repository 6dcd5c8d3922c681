"""Command-line interface.

Label files hold one token per line; blank lines are skipped and object
``i`` is the ``i``-th remaining line. All quantities are in bits.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .core import Labeling, LabelingError, labeling_from_tokens
from .dm import entropy_dm
from .flat import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    entropy_flat,
    entropy_h0,
    omega,
)
from .perturb import MERGE, RELABEL, SPLIT, PerturbSpec, make_pair
from .similarity import MeasureReport, ZeroInformationError, canonicalize, clustering_entropy, compare

EXIT_OK = 0
EXIT_IO = 2
EXIT_INVALID = 3
EXIT_DEGENERATE = 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code

    def __reduce__(self):
        return (CliError, (str(self), self.code))


def read_tokens(path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from exc
    return [line.strip() for line in text.splitlines() if line.strip()]


def read_labeling(path) -> Labeling:
    try:
        return labeling_from_tokens(read_tokens(path))
    except LabelingError as exc:
        raise CliError(f"{path}: {exc}", EXIT_INVALID) from exc


def write_labeling(path, g: Labeling):
    try:
        Path(path).write_text("".join(f"{x}\n" for x in g.assignments), encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _omega_method(text: str) -> str:
    return {"ec": "effective_columns"}.get(text, text)


def compare_paths(gt_path, cand_path, omega_method="effective_columns",
                  budget=DEFAULT_BUDGET) -> MeasureReport:
    g = read_labeling(gt_path)
    c = read_labeling(cand_path)
    try:
        return compare(g, c, omega_method, budget)
    except ZeroInformationError as exc:
        raise CliError(str(exc), EXIT_DEGENERATE) from exc
    except BudgetExceeded as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    except LabelingError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc


def _compare_job(args):
    gt, cand, method, budget = args
    return compare_paths(gt, cand, method, budget).to_json_dict()


def _format(rows: list[dict], fmt: str) -> str:
    if fmt == "json":
        return "\n".join(json.dumps(r) for r in rows) + "\n"
    keys = list(MeasureReport.JSON_KEYS)
    lines = ["\t".join(keys)]
    lines += ["\t".join(str(r[k]) for k in keys) for r in rows]
    return "\n".join(lines) + "\n"


def _read_manifest(path) -> list[tuple[str, str]]:
    base = Path(path).parent
    pairs = []
    for line in read_tokens(path):
        cols = line.split("\t")
        if len(cols) != 2:
            raise CliError(f"{path}: manifest lines need two tab-separated paths", EXIT_INVALID)
        pairs.append(tuple(str(base / p) if not Path(p).is_absolute() else p for p in cols))
    if not pairs:
        raise CliError(f"{path}: empty manifest", EXIT_INVALID)
    return pairs


def cmd_compare(args) -> str:
    method = _omega_method(args.omega)
    if args.pairs:
        pairs = _read_manifest(args.pairs)
        jobs = [(gt, cand, method, args.budget) for gt, cand in pairs]
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                rows = list(pool.map(_compare_job, jobs))
        else:
            rows = [_compare_job(j) for j in jobs]
    else:
        if not (args.ground_truth and args.candidate):
            raise CliError("compare needs GROUND_TRUTH and CANDIDATE, or --pairs", EXIT_INVALID)
        rows = [compare_paths(args.ground_truth, args.candidate, method, args.budget).to_json_dict()]
    return _format(rows, args.format)


def cmd_entropy(args) -> str:
    g = read_labeling(args.path)
    if args.variant == "h0":
        bits = entropy_h0(g)
    elif args.variant == "flat":
        bits = entropy_flat(g)
    elif args.variant == "dm":
        bits = entropy_dm(g)
    else:
        bits = clustering_entropy(g, positive_sizes=args.positive_sizes,
                                  include_group_count=not args.no_group_count)
    out = {"variant": args.variant, "n": g.n, "q": g.q, "bits": round(bits, 9)}
    return json.dumps(out) + "\n"


def cmd_omega(args) -> str:
    try:
        est = omega(args.rows, args.cols, _omega_method(args.omega), args.budget)
    except (LabelingError, BudgetExceeded) as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    out = {"method": est.method, "log2": round(est.log_count, 9)}
    if est.count is not None:
        out["count"] = est.count
    return json.dumps(out) + "\n"


def cmd_canon(args) -> str:
    g = read_labeling(args.path)
    canon = canonicalize(g).labeling
    text = "".join(f"{x}\n" for x in canon.assignments)
    if args.output:
        write_labeling(args.output, canon)
        return ""
    return text


def cmd_perturb(args) -> str:
    ops = [(SPLIT, args.split), (RELABEL, args.relabel), (MERGE, args.merge)]
    chosen = [(op, p) for op, p in ops if p is not None]
    if len(chosen) != 1:
        raise CliError("choose exactly one of --split, --relabel, --merge", EXIT_INVALID)
    op, param = chosen[0]
    spec = PerturbSpec(tuple(args.sizes), op, tuple(param) if op == MERGE else param, args.seed)
    try:
        g, c = make_pair(spec)
    except LabelingError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    out_dir = Path(args.out_dir)
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise CliError(f"cannot create {out_dir}: {exc}", EXIT_IO) from exc
    gt_path = out_dir / "ground_truth.txt"
    cand_path = out_dir / "candidate.txt"
    write_labeling(gt_path, g)
    write_labeling(cand_path, c)
    return json.dumps({"ground_truth": str(gt_path), "candidate": str(cand_path),
                       "n": g.n, "q_g": g.q, "q_c": c.q}) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="reduced-mi", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def omega_flags(sp):
        sp.add_argument("--omega", choices=["exact", "ec", "effective_columns"], default="ec",
                        help="table-count method for the flat measure (default: ec)")
        sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="state budget for exact table counting")

    sp = sub.add_parser("compare", help="compare a candidate labeling to a ground truth")
    sp.add_argument("ground_truth", nargs="?")
    sp.add_argument("candidate", nargs="?")
    sp.add_argument("--pairs", help="TSV manifest of ground-truth/candidate path pairs")
    sp.add_argument("--jobs", type=int, default=1)
    sp.add_argument("--format", choices=["json", "tsv"], default="json")
    omega_flags(sp)
    sp.set_defaults(func=cmd_compare)

    sp = sub.add_parser("entropy", help="information cost of one labeling")
    sp.add_argument("path")
    sp.add_argument("--variant", choices=["h0", "flat", "dm", "clustering"], default="flat")
    sp.add_argument("--positive-sizes", action="store_true",
                    help="clustering: count size vectors with positive parts only")
    sp.add_argument("--no-group-count", action="store_true",
                    help="clustering: leave out the log2 n cost of sending q")
    sp.set_defaults(func=cmd_entropy)

    sp = sub.add_parser("omega", help="number of tables with given margins")
    sp.add_argument("--rows", type=_int_list, required=True)
    sp.add_argument("--cols", type=_int_list, required=True)
    omega_flags(sp)
    sp.set_defaults(func=cmd_omega)

    sp = sub.add_parser("canon", help="canonical clustering labels")
    sp.add_argument("path")
    sp.add_argument("-o", "--output")
    sp.set_defaults(func=cmd_canon)

    sp = sub.add_parser("perturb", help="write a synthetic ground-truth/candidate pair")
    sp.add_argument("--sizes", type=_int_list, required=True)
    sp.add_argument("--split", type=int)
    sp.add_argument("--relabel", type=float)
    sp.add_argument("--merge", type=_int_list)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out-dir", default=".")
    sp.set_defaults(func=cmd_perturb)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out = args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
