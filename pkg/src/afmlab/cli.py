"""Command-line front end: file parsing, dispatch and record output."""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from . import verify
from .errors import (
    AfmlabError,
    AsymmetryError,
    InvalidParameter,
    NegativeWeight,
    ParseError,
    TooLarge,
)
from .graph import MAX_VERTICES, SimpleGraph, check_edge, from_edge_list
from .partition import hom_count, log_scalar, z2, z_recurrence, zq
from .spectral import WeightedModel, is_antiferromagnetic

DEFAULT_SEED = 0xA1E7
SYMMETRY_TOL = 1e-12
MIN_TOLERANCE = 1e-12


# ----------------------------------------------------------------- parsing


def _content_lines(text: str):
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield number, line


def parse_graph_text(text: str) -> SimpleGraph:
    """``n <count>`` followed by ``e <u> <v>`` lines; ``#`` starts a comment."""
    n = None
    edges = []
    seen: set[tuple[int, int]] = set()
    for number, line in _content_lines(text):
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "n" or len(parts) != 2:
                    raise ParseError("expected 'n <count>' header", number)
                n = int(parts[1])
                if n < 1:
                    raise ParseError("vertex count must be >= 1", number)
                if n > MAX_VERTICES:
                    raise TooLarge(f"{n} vertices exceeds {MAX_VERTICES}")
                continue
            if parts[0] != "e" or len(parts) != 3:
                raise ParseError(f"expected 'e <u> <v>', got {line!r}", number)
            u, v = int(parts[1]), int(parts[2])
        except ValueError:
            raise ParseError(f"malformed integer in {line!r}", number) from None
        try:
            edges.append(check_edge(n, u, v, seen))
        except AfmlabError as exc:
            raise type(exc)(f"line {number}: {exc}") from None
    if n is None:
        raise ParseError("missing 'n <count>' header")
    return from_edge_list(n, edges)


def parse_graph_file(path) -> SimpleGraph:
    return parse_graph_text(Path(path).read_text(encoding="utf-8"))


def parse_model_text(text: str) -> WeightedModel:
    """``q <count>`` then q rows of q nonnegative decimals; near-symmetric input is symmetrised."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("missing 'q <count>' header")
    number, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "q":
        raise ParseError("expected 'q <count>' header", number)
    try:
        q = int(parts[1])
    except ValueError:
        raise ParseError("malformed spin count", number) from None
    if q < 1:
        raise ParseError("spin count must be >= 1", number)
    rows = lines[1:]
    if len(rows) != q:
        raise ParseError(f"expected {q} rows, found {len(rows)}", rows[-1][0] if rows else number)
    matrix = []
    for number, line in rows:
        try:
            values = [float(x) for x in line.split()]
        except ValueError:
            raise ParseError(f"malformed number in {line!r}", number) from None
        if len(values) != q:
            raise ParseError(f"expected {q} entries, found {len(values)}", number)
        for j, w in enumerate(values):
            if not math.isfinite(w):
                raise ParseError(f"non-finite weight in column {j}", number)
            if w < 0:
                raise NegativeWeight(f"negative weight {w} in column {j}", number)
        matrix.append(values)
    m = np.array(matrix)
    gap = np.abs(m - m.T)
    if gap.max() > SYMMETRY_TOL:
        i, j = np.unravel_index(int(np.argmax(gap)), gap.shape)
        raise AsymmetryError(f"M[{i}][{j}] and M[{j}][{i}] differ by {gap[i, j]:g}", rows[int(i)][0])
    return WeightedModel.from_matrix((m + m.T) / 2)


def parse_model_file(path) -> WeightedModel:
    return parse_model_text(Path(path).read_text(encoding="utf-8"))


def parse_activity_text(text: str, count: int | None = None) -> list[Fraction]:
    """One decimal per line, kept exact."""
    values = []
    for number, line in _content_lines(text):
        try:
            values.append(Fraction(line))
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed activity {line!r}", number) from None
    if count is not None and len(values) != count:
        raise ParseError(f"expected {count} activities, found {len(values)}")
    return values


def parse_rows_text(text: str, q: int, n: int) -> list[list[Fraction]]:
    """q lines of n decimals, one line per colour."""
    rows = []
    for number, line in _content_lines(text):
        try:
            rows.append([Fraction(x) for x in line.split()])
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"malformed activity in {line!r}", number) from None
        if len(rows[-1]) != n:
            raise ParseError(f"expected {n} activities, found {len(rows[-1])}", number)
    if len(rows) != q:
        raise ParseError(f"expected {q} activity rows, found {len(rows)}")
    return rows


def serialize_graph(g: SimpleGraph) -> str:
    return "".join([f"n {g.vertex_count}\n"] + [f"e {u} {v}\n" for u, v in g.edges()])


def serialize_model(h: WeightedModel) -> str:
    rows = [" ".join(repr(float(w)) for w in row) for row in h.weights]
    return f"q {h.q}\n" + "".join(r + "\n" for r in rows)


# ----------------------------------------------------------------- output


def _clean(value):
    """Make a record JSON-safe: non-finite floats become strings, tuples become lists."""
    if isinstance(value, dict):
        return {k: _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if isinstance(value, Fraction):
        return value.numerator if value.denominator == 1 else str(value)
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def _tsv_cell(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return "%.17g" % value
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True, separators=(",", ":"))
    return str(value)


class RecordWriter:
    def __init__(self, stream: TextIO, fmt: str):
        self.stream = stream
        self.fmt = fmt
        self.header: list[str] | None = None
        self.count = 0
        self.failed = 0
        self.min_slack = math.inf

    def write(self, record: dict) -> None:
        record = _clean(record)
        self.count += 1
        if record.get("asserted", True) and record.get("pass") is False:
            self.failed += 1
        slack = record.get("slack", record.get("min_slack"))
        if isinstance(slack, (int, float)):
            self.min_slack = min(self.min_slack, slack)
        if self.fmt == "json":
            self.stream.write(json.dumps(record, sort_keys=True) + "\n")
            return
        keys = sorted(record)
        if keys != self.header:
            self.stream.write("\t".join(keys) + "\n")
            self.header = keys
        self.stream.write("\t".join(_tsv_cell(record[k]) for k in keys) + "\n")

    def summary(self) -> None:
        info = {"records": self.count, "failed": self.failed, "min_slack": self.min_slack}
        if self.fmt == "json":
            self.stream.write(json.dumps({"summary": _clean(info)}, sort_keys=True) + "\n")
        else:
            self.stream.write(
                "# summary\trecords=%d\tfailed=%d\tmin_slack=%s\n"
                % (self.count, self.failed, _tsv_cell(_clean(self.min_slack)))
            )


# ----------------------------------------------------------------- commands


def _load_activities(args, g: SimpleGraph, scalar_name: str, file_name: str, default=None) -> list[Fraction]:
    scalar = getattr(args, scalar_name, None)
    path = getattr(args, file_name, None)
    if scalar is not None and path is not None:
        raise InvalidParameter(f"give --{scalar_name} or --{file_name.replace('_', '-')}, not both")
    if path is not None:
        return parse_activity_text(Path(path).read_text(encoding="utf-8"), g.vertex_count)
    if scalar is None:
        if default is None:
            raise InvalidParameter(f"--{scalar_name} or --{file_name.replace('_', '-')} is required")
        scalar = default
    return [Fraction(scalar)] * g.vertex_count


def _floats(values: Iterable) -> list[float]:
    return [float(v) for v in values]


def _need(args, name: str):
    value = getattr(args, name, None)
    if value is None:
        raise InvalidParameter(f"--{name.replace('_', '-')} is required")
    return value


def cmd_eval(args, out: RecordWriter) -> None:
    g = parse_graph_file(_need(args, "graph"))
    witness = verify.graph_witness(g)
    if args.model is not None:
        h = parse_model_file(args.model)
        value = hom_count(g, h)
        out.write({"quantity": "hom", "value": float(value), "log_value": log_scalar(value) if value > 0 else -math.inf,
                   "witness": {**witness, "model": verify.model_witness(h)}})
        return
    lam = _load_activities(args, g, "lambda_", "lambda_file", default="1")
    if args.q is not None and args.q > 1:
        rows = (
            parse_rows_text(Path(args.rows_file).read_text(encoding="utf-8"), args.q, g.vertex_count)
            if args.rows_file
            else [lam] * args.q
        )
        value, name = zq(g, rows), f"Z{args.q}"
    elif args.mu is not None or args.mu_file is not None:
        mu = _load_activities(args, g, "mu", "mu_file")
        value, name = z2(g, lam, mu), "Z2"
    else:
        value, name = z_recurrence(g, lam), "Z"
    out.write({"quantity": name, "value": Fraction(value), "log_value": log_scalar(Fraction(value)), "witness": witness})


def cmd_spectra(args, out: RecordWriter) -> None:
    h = parse_model_file(_need(args, "model"))
    afm, spectrum = is_antiferromagnetic(h)
    out.write({
        "quantity": "spectrum",
        "eigenvalues": list(spectrum.eigenvalues),
        "afm": afm,
        "positive_count": spectrum.positive_count,
        "zero_tolerance": spectrum.zero_tolerance,
        "flags": ["near-zero-eigenvalue"] if spectrum.near_zero() else [],
    })


def cmd_check(args, out: RecordWriter) -> None:
    tol = args.tol
    name = args.check
    if name == "deg2":
        h = parse_model_file(_need(args, "model"))
        rep = verify.check_deg2_conjecture(_need(args, "kind"), _need(args, "length"), h, tol)
        out.write(rep.to_record())
        return
    g = parse_graph_file(_need(args, "graph"))
    if name == "thm-main":
        rep = verify.check_thm_main(g, _floats(_load_activities(args, g, "lambda_", "lambda_file")), tol)
    elif name == "thm-2spin":
        lam = float(Fraction(_need(args, "lambda_")))
        alpha = float(Fraction(_need(args, "alpha")))
        rep = verify.check_thm_2spin(g, lam, alpha, tol)
    elif name == "thm-semiproper":
        lam = _floats(_load_activities(args, g, "lambda_", "lambda_file"))
        mu = _floats(_load_activities(args, g, "mu", "mu_file"))
        rep = verify.check_thm_semiproper(g, lam, mu, tol)
    elif name in ("weak-q", "bijection"):
        q = _need(args, "q")
        if args.rows_file:
            rows = parse_rows_text(Path(args.rows_file).read_text(encoding="utf-8"), q, g.vertex_count)
        else:
            rows = [_load_activities(args, g, "lambda_", "lambda_file", default="1")] * q
        if name == "weak-q":
            rep = verify.check_weak_semiproper(g, [_floats(r) for r in rows], tol)
        else:
            rep = verify.check_bijection(g, q, rows)
    elif name == "davies-kang":
        rep = verify.check_davies_kang(g, float(Fraction(_need(args, "lambda_"))), tol)
    else:  # pragma: no cover - argparse restricts choices
        raise InvalidParameter(f"unknown check {name!r}")
    out.write(rep.to_record())


def _parse_ds(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise InvalidParameter(f"malformed degree list {text!r}") from None


def cmd_sweep(args, out: RecordWriter) -> None:
    tol = args.tol
    name = args.sweep
    if name == "lemma-key":
        rep = verify.sweep_lemma_key(args.points or 100_000, args.seed, tol=tol)
    elif name == "chain":
        rep = verify.sweep_chain()
    elif name == "dual-set":
        rep = verify.sweep_dual_set(args.points or 1000, args.seed, tol=tol)
    elif name == "basic-ineq":
        rep = verify.sweep_basic_ineq()
    elif name == "neg-fugacity":
        configs = [_parse_ds(args.ds)] if args.ds else None
        rep = verify.sweep_neg_fugacity(args.max_delta, args.step, configs)
    else:  # pragma: no cover
        raise InvalidParameter(f"unknown sweep {name!r}")
    out.write(rep.to_record())


def cmd_explore(args, out: RecordWriter) -> None:
    config = verify.ExplorerConfig(n_max=args.nmax, q_max=args.qmax)
    report = verify.explore_conjecture(args.trials, args.seed, config=config)
    out.write(report.to_record())


def _tolerance(text: str) -> float:
    value = float(text)
    if not value >= MIN_TOLERANCE:
        raise argparse.ArgumentTypeError(f"tolerance must be >= {MIN_TOLERANCE:g}")
    return value


def _seed(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    common.add_argument("--tol", type=_tolerance, default=verify.SLACK_TOL, help="slack tolerance for pass/fail")

    inputs = argparse.ArgumentParser(add_help=False)
    inputs.add_argument("--graph")
    inputs.add_argument("--model")
    inputs.add_argument("--lambda", dest="lambda_", metavar="LAMBDA")
    inputs.add_argument("--lambda-file")
    inputs.add_argument("--mu")
    inputs.add_argument("--mu-file")
    inputs.add_argument("--alpha")
    inputs.add_argument("--q", type=int)
    inputs.add_argument("--rows-file")
    inputs.add_argument("--kind", choices=("path", "path_edges", "cycle"))
    inputs.add_argument("--length", type=int)

    parser = argparse.ArgumentParser(prog="afmlab", description="Clique lower bounds for spin-model partition functions.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common, inputs], help="evaluate Z, Z2, Zq or hom(G, H)")
    sub.add_parser("spectra", parents=[common, inputs], help="eigenvalues and antiferromagnetic test")
    check = sub.add_parser("check", parents=[common, inputs], help="compare a partition function with its bound")
    check.add_argument(
        "check", choices=("thm-main", "thm-2spin", "thm-semiproper", "deg2", "weak-q", "bijection", "davies-kang")
    )
    sweep = sub.add_parser("sweep", parents=[common], help="parameter sweeps over the scalar lemmas")
    sweep.add_argument("sweep", choices=("lemma-key", "chain", "dual-set", "basic-ineq", "neg-fugacity"))
    sweep.add_argument("--points", type=int)
    sweep.add_argument("--max-delta", type=int, default=3)
    sweep.add_argument("--step", type=float, default=1e-4)
    sweep.add_argument("--ds", help="comma-separated neighbour degrees for neg-fugacity")
    explore = sub.add_parser("explore", parents=[common], help="random search for clique-bound counterexamples")
    explore.add_argument("--trials", type=int, default=1000)
    explore.add_argument("--nmax", type=int, default=10)
    explore.add_argument("--qmax", type=int, default=3)
    return parser


COMMANDS = {"eval": cmd_eval, "spectra": cmd_spectra, "check": cmd_check, "sweep": cmd_sweep, "explore": cmd_explore}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    """Execute one command; returns 0 when every asserted record passes, 1 otherwise, 2 on bad input."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "kind", None) == "path":
        args.kind = "path_edges"
    writer = RecordWriter(stdout, args.format)
    try:
        COMMANDS[args.command](args, writer)
    except (AfmlabError, OSError) as exc:
        stderr.write(f"afmlab: error: {exc}\n")
        return 2
    writer.summary()
    return 1 if writer.failed else 0


def main() -> None:
    sys.exit(run())
