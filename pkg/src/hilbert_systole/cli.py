"""Command line front end: ``hilbert-systole {bounds,search,verify,order}``.

Exit codes: 0 success, 1 invariant failure or counterexample, 2 search
budget exhausted, 3 bad input.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import logging
import sys
import time
from dataclasses import asdict, dataclass
from dataclasses import field as dc_field

from . import __version__
from .descriptors import load_field, parse_ideal
from .errors import BudgetExceeded, CapExceeded, DescriptorError, HilbertSystoleError
from .modular_group import BRUTE_FORCE_CAP, brute_force_image_order, order_sl2_quotient
from .report import build_report, check_report, reports_to_csv
from .systole import DEFAULT_SEARCH_CAP, search_shortest, verify_suite

log = logging.getLogger("hilbert_systole")

EXIT_OK, EXIT_INVARIANT, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3
DEFAULT_FIELD = "q-sqrt5"


@dataclass
class RunConfig:
    command: str
    field: str = DEFAULT_FIELD
    ideals: list = dc_field(default_factory=list)
    height: int = 2
    samples: int = 200
    seed: int = 0
    cap: int = DEFAULT_SEARCH_CAP
    format: str = "json"
    out: str | None = None
    workers: int = 1

    def resolved(self) -> dict:
        d = asdict(self)
        d.pop("out")
        return d

    def digest(self) -> str:
        blob = json.dumps(self.resolved(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, "%s: error: %s\n" % (self.prog, message))


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("expected an integer >= 1, got %s" % text)
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hilbert-systole",
                     description="Systole bounds for principal congruence covers of Hilbert modular varieties.")
    parser.add_argument("--version", action="version", version="%(prog)s " + __version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "bounds": "lower, theorem and upper bounds for each ideal",
        "search": "bounds plus a box search for short closed geodesics",
        "verify": "randomized checks of the trace and norm lemmas",
        "order": "|SL2(O/I)| by formula and by brute-force closure",
    }
    for name, text in helps.items():
        p = sub.add_parser(name, help=text)
        p.add_argument("--field", default=DEFAULT_FIELD,
                       help="field descriptor JSON file, or a preset name (default %(default)s)")
        p.add_argument("--ideal", action="append", required=True, dest="ideals",
                       help="ideal descriptor as JSON, repeatable")
        p.add_argument("--height", type=_positive, default=2)
        p.add_argument("--samples", type=_positive, default=200)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--cap", type=_positive, default=None,
                       help="search tuple budget (default 1e8); brute-force order cap for 'order' (default 1e5)")
        p.add_argument("--format", choices=["json", "csv"], default="json")
        p.add_argument("--out", default=None, help="output file (default stdout)")
        p.add_argument("--workers", type=_positive, default=1, help="processes for the search")
        p.add_argument("-v", "--verbose", action="store_true")
    return parser


def _header(cfg: RunConfig) -> dict:
    return {"tool": "hilbert-systole", "version": __version__,
            "config": cfg.resolved(), "config_hash": cfg.digest()}


def _json(header, key, rows) -> str:
    return json.dumps({"header": header, key: rows}, indent=2) + "\n"


def _csv_table(header, columns, rows) -> str:
    buf = io.StringIO()
    buf.write("# %s\n" % json.dumps(header, sort_keys=True, separators=(",", ":")))
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    writer.writerows(rows)
    return buf.getvalue()


def cmd_bounds(cfg, K, ideals):
    reports, status = [], EXIT_OK
    for I, desc in ideals:
        rep = build_report(K, I, desc)
        bad = check_report(rep, I)
        if bad:
            log.error("invariant failure for %s: %s", json.dumps(desc), "; ".join(bad))
            status = EXIT_INVARIANT
        reports.append(rep)
    return reports, status


def cmd_search(cfg, K, ideals):
    reports, status = [], EXIT_OK
    for I, desc in ideals:
        start = time.perf_counter()
        try:
            result = search_shortest(I, cfg.height, cap=cfg.cap, workers=cfg.workers)
        except BudgetExceeded as exc:
            log.error("%s: %s", json.dumps(desc), exc)
            result = exc.partial
            status = max(status, EXIT_BUDGET)
        elapsed = time.perf_counter() - start
        # wall time goes to stderr only, so that reports stay byte-identical
        print("search %s: %.3f s, %d tuples, %d accepted, %d totally hyperbolic"
              % (json.dumps(desc), elapsed, result.tuples, result.accepted, result.totally_hyperbolic),
              file=sys.stderr)
        rep = build_report(K, I, desc, result)
        bad = check_report(rep, I)
        if bad:
            log.error("invariant failure for %s: %s", json.dumps(desc), "; ".join(bad))
            status = EXIT_INVARIANT
        reports.append(rep)
    return reports, status


def cmd_verify(cfg, K, ideals):
    rows, status = [], EXIT_OK
    for I, desc in ideals:
        suite = verify_suite(I, cfg.samples, cfg.seed)
        row = {"ideal": desc, "norm": I.norm}
        row.update(suite.to_dict())
        rows.append(row)
        if not suite.passed:
            status = EXIT_INVARIANT
            for ce in suite.counterexamples:
                log.error("counterexample (%s) for %s: %s", ce["check"], json.dumps(desc), json.dumps(ce["matrix"]))
    return rows, status


def cmd_order(cfg, K, ideals):
    rows, status = [], EXIT_OK
    for I, desc in ideals:
        formula = order_sl2_quotient(I)
        row = {"ideal": desc, "norm": I.norm, "formula": formula, "brute_force": None,
               "equal": None, "below_norm_cubed": formula < I.norm ** 3 or I.norm == 1}
        try:
            row["brute_force"] = brute_force_image_order(I, cap=cfg.cap)
            row["equal"] = row["brute_force"] == formula
        except CapExceeded as exc:
            row["skipped"] = str(exc)
        if row["equal"] is False or not row["below_norm_cubed"]:
            status = EXIT_INVARIANT
        rows.append(row)
    return rows, status


COMMANDS = {"bounds": cmd_bounds, "search": cmd_search, "verify": cmd_verify, "order": cmd_order}


def render(cfg: RunConfig, payload) -> str:
    header = _header(cfg)
    if cfg.command in ("bounds", "search"):
        if cfg.format == "csv":
            return reports_to_csv(payload, [json.dumps(header, sort_keys=True, separators=(",", ":"))])
        return _json(header, "reports", [r.to_dict() for r in payload])
    if cfg.format == "csv":
        if cfg.command == "order":
            cols = ["ideal", "norm", "formula", "brute_force", "equal"]
        else:
            cols = ["ideal", "norm", "samples", "y0_zero", "lemma1_membership_fail", "lemma1_norm_fail",
                    "lemma2_fail", "trace_sandwich_fail", "displacement_checks", "displacement_fail", "passed"]
        body = [[json.dumps(r[c], separators=(",", ":"), sort_keys=True) if c == "ideal"
                 else "" if r.get(c) is None else str(r[c]).lower() if isinstance(r[c], bool) else r[c]
                 for c in cols] for r in payload]
        return _csv_table(header, cols, body)
    return _json(header, "results", payload)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    cap = args.cap
    if cap is None:
        cap = BRUTE_FORCE_CAP if args.command == "order" else DEFAULT_SEARCH_CAP
    cfg = RunConfig(command=args.command, field=args.field, ideals=list(args.ideals),
                    height=args.height, samples=args.samples, seed=args.seed, cap=cap,
                    format=args.format, out=args.out, workers=args.workers)
    try:
        K = load_field(cfg.field)
        ideals = [parse_ideal(K, text) for text in cfg.ideals]
    except DescriptorError as exc:
        print("input error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    try:
        payload, status = COMMANDS[cfg.command](cfg, K, ideals)
    except HilbertSystoleError as exc:
        print("input error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return EXIT_INPUT
    text = render(cfg, payload)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
