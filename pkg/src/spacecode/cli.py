"""Command-line interface.

    spacecode construct dist.json [--one-to-one [--epsilon]] [-o code.json]
    spacecode encode code.json [message.txt]      # message: 1-based indices
    spacecode decode code.json [stream.txt]       # prints one index per line
    spacecode bounds dist.json [--format json|csv]
    spacecode oracle dist.json [--max-len L] [--budget N]
    spacecode bench --family zipf --n 100 --k 2 [--param 1.0] [--trials 5]

Exit codes: 0 success, 2 invalid input, 3 malformed stream, 4 oracle budget
exceeded.
"""

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import bench as bench_mod
from .bounds import full_report
from .errors import BudgetExceeded, MalformedStream, SpaceCodeError
from .oracle import DEFAULT_BUDGET, exact_optimum, oracle_to_json
from .radix_codebook import assign_one_to_one, average_length
from .source_model import load_distribution
from .space_code import (
    average_length_space,
    build_space_code,
    codebook_from_json,
    decode,
    encode,
)

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_MALFORMED = 3
EXIT_BUDGET = 4


class UsageError(Exception):
    pass


def round_numbers(obj, digits: int = 15):
    """Round every float in a JSON-like structure to ``digits`` significant digits."""
    if isinstance(obj, float):
        return float(f"{obj:.{digits}g}")
    if isinstance(obj, dict):
        return {key: round_numbers(v, digits) for key, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_numbers(v, digits) for v in obj]
    return obj


def _dump_json(obj) -> str:
    return json.dumps(round_numbers(obj), indent=2) + "\n"


def _read_input(path):
    if path is None or path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _write_output(text: str, path) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        Path(path).write_text(text, encoding="utf-8")


def _require_file(path) -> None:
    if path is not None and path != "-" and not Path(path).is_file():
        raise UsageError(f"no such file: {path}")


def _load_dist(args):
    _require_file(args.dist)
    return load_distribution(args.dist, k=args.k, drop_zeros=args.drop_zeros)


def _load_codebook(path):
    _require_file(path)
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON: {exc}") from None
    return codebook_from_json(doc)


def cmd_construct(args) -> int:
    dist = _load_dist(args)
    if args.one_to_one:
        code = assign_one_to_one(dist, uses_epsilon=args.epsilon)
        words, kind = list(code.codewords), code.kind
        length = average_length(code, dist)
        spaces = 0
    else:
        if args.epsilon:
            raise UsageError("--epsilon only applies together with --one-to-one")
        code = build_space_code(dist)
        words, kind = list(code.rendered), "space_prefix"
        length = average_length_space(code, dist)
        spaces = code.space_count
    # report codewords in the input's symbol order
    pairs = sorted(zip(dist.permutation, words))
    doc = {"kind": kind, "k": dist.k, "codewords": [w for _, w in pairs]}
    if [i for i, _ in pairs] != list(range(1, dist.n + 1)):
        doc["symbols"] = [i for i, _ in pairs]
    _write_output(_dump_json(doc), args.output)
    print(f"n={dist.n} k={dist.k} L={float(length):.15g} spaces={spaces}", file=sys.stderr)
    return EXIT_OK


def cmd_encode(args) -> int:
    code = _load_codebook(args.codebook)
    _require_file(args.message)
    message = []
    for tok in _read_input(args.message).split():
        try:
            message.append(int(tok))
        except ValueError:
            raise UsageError(f"message token {tok!r} is not an integer") from None
    _write_output(encode(code, message), args.output)
    return EXIT_OK


def cmd_decode(args) -> int:
    code = _load_codebook(args.codebook)
    _require_file(args.stream)
    symbols = decode(code, _read_input(args.stream))
    _write_output("".join(f"{s}\n" for s in symbols), args.output)
    return EXIT_OK


def cmd_bounds(args) -> int:
    dist = _load_dist(args)
    report = full_report(dist)
    if args.format == "json":
        _write_output(_dump_json(report.to_json()), args.output)
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["formula_id", "kind", "target", "value", "strict"])
        for r in report.records:
            writer.writerow([r.formula_id, r.kind, r.target, f"{r.value:.12g}", str(r.strict).lower()])
        _write_output(buf.getvalue(), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    dist = _load_dist(args)
    result = exact_optimum(dist, max_len=args.max_len, budget=args.budget)
    doc = oracle_to_json(result)
    built = average_length_space(build_space_code(dist), dist)
    doc["metadata"]["constructed_length"] = float(built)
    doc["metadata"]["gap_certificate"] = float(built - result.optimal_length)
    _write_output(_dump_json(doc), args.output)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.dist_file is not None:
        _require_file(args.dist_file)
    family = "custom-file" if args.dist_file and args.family is None else (args.family or "zipf")
    spec = bench_mod.BenchSpec(
        family=family,
        n=args.n,
        k=args.k,
        family_param=args.param,
        seed=args.seed,
        trials=args.trials,
        jitter=args.jitter,
        dist_file=args.dist_file,
    )
    rows = bench_mod.run(spec, oracle_max_n=args.oracle_max_n, oracle_budget=args.budget)
    if args.format == "csv":
        text = bench_mod.rows_to_csv(rows)
    else:
        text = _dump_json([{name: getattr(r, name) for name in bench_mod.CSV_HEADER} for r in rows])
    _write_output(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spacecode",
        description="Prefix codes whose space mark may only end a codeword.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def dist_args(p):
        p.add_argument("dist", help="distribution file (JSON or CSV)")
        p.add_argument("--k", type=int, default=None, help="code alphabet size (overrides the file)")
        p.add_argument("--drop-zeros", action="store_true", help="drop zero weights instead of failing")
        p.add_argument("-o", "--output", default=None)

    p = sub.add_parser("construct", help="build a codebook")
    dist_args(p)
    p.add_argument("--one-to-one", action="store_true", help="emit the optimal one-to-one code instead")
    p.add_argument("--epsilon", action="store_true", help="allow the empty codeword (with --one-to-one)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("encode", help="encode 1-based symbol indices")
    p.add_argument("codebook")
    p.add_argument("message", nargs="?", default=None, help="file of indices (default stdin)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("decode", help="decode a stream into 1-based symbol indices")
    p.add_argument("codebook")
    p.add_argument("stream", nargs="?", default=None, help="encoded stream file (default stdin)")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("bounds", help="evaluate every length bound")
    dist_args(p)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("oracle", help="exact optimum by exhaustive search")
    dist_args(p)
    p.add_argument("--max-len", type=int, default=None, help="longest candidate digit string")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="search node budget")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("bench", help="benchmark table over a distribution family")
    p.add_argument("--family", choices=bench_mod.FAMILIES, default=None)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--param", type=float, default=1.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--jitter", type=float, default=0.0)
    p.add_argument("--dist-file", default=None)
    p.add_argument("--oracle-max-n", type=int, default=10)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except MalformedStream as exc:
        print(f"spacecode: malformed stream: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    except BudgetExceeded as exc:
        print(f"spacecode: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SpaceCodeError, UsageError, OSError, ValueError) as exc:
        print(f"spacecode: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
