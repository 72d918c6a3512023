"""
Odd Arc Algebra Toolkit - command line front end.

Run: python oddarc.py enumerate --n 3
     python oddarc.py table --n 2 --side a
     python oddarc.py center --n 2 --even
     python oddarc.py twist --n 2 --out tau.json
     python oddarc.py verify-all --n 2 --format json
"""
import sys
import os
import argparse
import json
from dataclasses import dataclass
from typing import Any, Callable, Optional

# Fix Windows console encoding
if sys.platform == 'win32':
    sys.stdout.reconfigure(encoding='utf-8')

sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from rich.console import Console
from rich.table import Table

from config import OUTPUT, SIZE_GUARDS, VERIFY_CONFIG
from src.algebra.base import ArcAlgebra
from src.algebra.even_arc import EvenArcAlgebra
from src.algebra.odd_arc import (OddArcAlgebra, diagonal_subalgebra, mod2_agreement,
                                 nonassoc_witness, supercommutation_report)
from src.algebra.tables import (golden_path, load_golden, multiplication_table,
                                parse_element, table_record)
from src.analysis.associator import (Associator, Cochain, TwistedArcAlgebra, classify,
                                     classify_all_pairs,
                                     classify_twisted, integral_twist_search, non_iso_checks,
                                     explicit_twist, quasi_associativity, solve_twist,
                                     twisted_anticommutation, twisted_associativity,
                                     verify_cocycle, verify_twist)
from src.analysis.center import (center_choice_independence, even_center, graded_center,
                                 odd_center, springer_comparison, supercenter_check, verify_iso)
from src.analysis.springer import quotient_basis
from src.diagrams.chronology import ChoiceC, enumerate_all_choices, load_choice
from src.diagrams.matchings import catalan, enumerate_matchings, matching_label
from src.errors import OddArcError
from src.report import CheckReport

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    n: int
    choice: str = "canonical"
    fmt: str = OUTPUT["format"]
    seed: int = VERIFY_CONFIG["seed"]
    samples: int = VERIFY_CONFIG["samples"]
    args: Optional[argparse.Namespace] = None

    def load_choice(self) -> ChoiceC:
        return load_choice(self.n, self.choice)


class Output:
    """Single writer: text through rich, or one JSON document at the end."""

    def __init__(self, cfg: RunConfig, console: Optional[Console] = None):
        self.cfg = cfg
        self.console = console or Console(highlight=False)
        self.json = cfg.fmt == "json"
        self.record: dict[str, Any] = {'command': cfg.command, 'n': cfg.n, 'choice': cfg.choice}
        self.reports: list[CheckReport] = []

    def say(self, text: str, style: Optional[str] = None):
        if not self.json:
            self.console.print(text, style=style, markup=False, highlight=False)

    def banner(self, title: str):
        self.say("\n" + "=" * 60)
        self.say(title, style="bold")
        self.say("=" * 60)

    def step(self, text: str):
        self.say(f"[*] {text}")

    def error(self, text: str):
        if self.json:
            self.record['error'] = text
        else:
            self.say(f"[ERROR] {text}", style="red")

    def data(self, key: str, value):
        self.record[key] = value

    def progress(self, label: str, i: int, total: int):
        if i == total:
            self.step(f"{label}: {total} triples cached")

    def report(self, r: CheckReport):
        self.reports.append(r)
        if r.passed:
            self.say(f"[OK] {r.name}", style="green")
        else:
            self.say(f"[!] {r.name}", style="yellow")
        for reason in r.reasons:
            self.say(f"    {reason}")
        if not r.passed and r.witness:
            self.say("    witness: " + json.dumps(r.witness, sort_keys=True, default=str))

    def frame(self, df, title: Optional[str] = None):
        if self.json:
            return
        table = Table(title=title)
        table.add_column("")
        for col in df.columns:
            table.add_column(str(col))
        for idx, row in df.iterrows():
            table.add_row(str(idx), *(str(v) for v in row))
        self.console.print(table)

    def finish(self) -> int:
        passed = all(r.passed for r in self.reports)
        if self.json:
            self.record['checks'] = [r.to_dict() for r in self.reports]
            self.record['passed'] = passed
            self.console.out(json.dumps(self.record, indent=OUTPUT["json_indent"],
                                        sort_keys=True, default=str), highlight=False)
        elif self.reports:
            failed = sum(1 for r in self.reports if not r.passed)
            self.say("")
            if failed:
                self.say(f"[!] {failed} of {len(self.reports)} checks failed", style="yellow")
            else:
                self.say(f"[OK] all {len(self.reports)} checks passed", style="green")
        return EXIT_OK if passed else EXIT_FAILED


# =============================================================================
# COMMANDS
# =============================================================================

def _algebra(cfg: RunConfig, kind: str, out: Output) -> ArcAlgebra:
    if kind == "even":
        algebra = EvenArcAlgebra(cfg.n)
    else:
        algebra = OddArcAlgebra(cfg.n, cfg.load_choice())
        if kind == "twisted":
            algebra = TwistedArcAlgebra(algebra, _twist(cfg, out))
    algebra.build_cache(progress_callback=out.progress)
    return algebra


def _twist(cfg: RunConfig, out: Output) -> Cochain:
    path = getattr(cfg.args, "tau", None)
    if path == "explicit" or (path is None and cfg.n == 2 and cfg.choice == "canonical"):
        out.step("using the explicit n=2 twist")
        return explicit_twist()
    if path:
        out.step(f"loading twist from {path}")
        return Cochain.load(path)
    out.step("solving d(tau) = psi")
    return solve_twist(Associator(cfg.n, cfg.load_choice()))


def cmd_enumerate(cfg: RunConfig, out: Output):
    ms = enumerate_matchings(cfg.n)
    out.banner(f"CROSSINGLESS MATCHINGS - n={cfg.n}")
    for m in ms:
        out.say(f"  {matching_label(m):>6}  {m}")
    out.data('matchings', [{'label': matching_label(m), 'arcs': m.to_list()} for m in ms])
    r = CheckReport(f"Catalan({cfg.n}) = {catalan(cfg.n)} matchings", len(ms) == catalan(cfg.n))
    if not r:
        r.fail(f"enumerated {len(ms)}")
    out.report(r)


def cmd_table(cfg: RunConfig, out: Output):
    args = cfg.args
    algebra = _algebra(cfg, args.algebra, out)
    out.banner(f"{algebra.NAME.upper()} - n={cfg.n}, side {args.side}")
    record = table_record(algebra, args.side, args.algebra)
    out.frame(multiplication_table(algebra, args.side), title=f"rows (., {args.side}) x columns ({args.side}, .)")
    out.data('table', record)
    if args.write_golden:
        path = golden_path(args.algebra, args.side, cfg.n)
        with open(path, "w") as f:
            json.dump(record, f, indent=OUTPUT["json_indent"], sort_keys=True)
        out.step(f"golden file written to {path}")
        return
    golden = load_golden(args.algebra, args.side, cfg.n)
    if golden is None or cfg.choice != "canonical":
        return
    r = CheckReport(f"table matches {os.path.basename(golden_path(args.algebra, args.side, cfg.n))}", True)
    if record["rows"] != golden["rows"] or record["cols"] != golden["cols"]:
        out.report(r.fail("row or column labels differ"))
        return
    for i, row in enumerate(record["entries"]):
        for j, entry in enumerate(row):
            expected = golden["entries"][i][j]
            if entry != expected:
                r.fail(f"{record['rows'][i]} * {record['cols'][j]}",
                       row=record['rows'][i], col=record['cols'][j], got=entry, expected=expected)
    out.report(r)


def cmd_multiply(cfg: RunConfig, out: Output):
    args = cfg.args
    algebra = _algebra(cfg, args.algebra, out)
    factors = [parse_element(algebra, text) for text in args.factors]
    product = algebra.multiply_all(*factors)
    out.banner(f"PRODUCT IN {algebra.NAME.upper()} - n={cfg.n}")
    for text, f in zip(args.factors, factors):
        out.say(f"  {text:>12} = {f}")
    out.say(f"  {'product':>12} = {product}")
    out.data('factors', [str(f) for f in factors])
    out.data('product', str(product))


def cmd_center(cfg: RunConfig, out: Output):
    args = cfg.args
    out.banner(f"{'EVEN' if args.even else 'ODD'} CENTER - n={cfg.n}")
    if args.even:
        result = even_center(cfg.n)
        out.report(springer_comparison(cfg.n))
    else:
        algebra = _algebra(cfg, "odd", out)
        result = odd_center(algebra)
        if args.brute:
            out.step("brute-force supercenter")
            out.report(supercenter_check(algebra, result, graded_center(algebra, supercommute=False)))
    out.say(f"  graded rank: {result.graded_rank}")
    out.frame(result.graded_rank.to_frame().set_index('qdeg'))
    for z in result.basis:
        out.say(f"  {z}")
    out.data('center', result.to_dict())
    if result.report is not None:
        out.report(result.report)


def cmd_springer(cfg: RunConfig, out: Output):
    basis = quotient_basis(cfg.n)
    out.banner(f"ODD SPRINGER QUOTIENT - n={cfg.n}")
    out.say(f"  graded rank: {basis.graded_rank()}")
    for p in basis.representatives():
        out.say(f"  {p}")
    out.data('springer', basis.to_dict(relations=cfg.args.relations))
    r = CheckReport(f"rank = C({2 * cfg.n},{cfg.n})", basis.rank == catalan(cfg.n) * (cfg.n + 1))
    if not r:
        r.fail(f"rank {basis.rank}")
    out.report(r)


def cmd_verify_iso(cfg: RunConfig, out: Output):
    out.banner(f"SPRINGER QUOTIENT ~ ODD CENTER - n={cfg.n}")
    out.report(verify_iso(_algebra(cfg, "odd", out)))


def cmd_associator(cfg: RunConfig, out: Output):
    assoc = Associator(cfg.n, cfg.load_choice())
    out.banner(f"ASSOCIATOR - n={cfg.n}, choice {cfg.choice}")
    frame = assoc.table_frame()
    nonzero = frame[frame['phi_ch'] != 0]
    out.say(f"  phi_ch nonzero on {len(nonzero)} of {len(frame)} quadruples "
            f"({int((~frame['visible']).sum())} not visible to the functor)")
    out.frame(nonzero.set_index(['d', 'c', 'b', 'a']))
    out.data('phi_ch', [[int(v) for v in row] for row in nonzero[['d', 'c', 'b', 'a']].values])
    out.report(verify_cocycle(assoc))
    samples = None if cfg.n <= 2 else cfg.samples
    out.report(quasi_associativity(_algebra(cfg, "odd", out), assoc, samples, cfg.seed))


def cmd_twist(cfg: RunConfig, out: Output):
    assoc = Associator(cfg.n, cfg.load_choice())
    out.banner(f"TWIST - n={cfg.n}, choice {cfg.choice}")
    out.step("solving d(tau) = psi over Z/4")
    tau = solve_twist(assoc)
    out.say(f"  tau nonzero on {len(tau.to_dict()['values'])} (arc triple, k, l) keys")
    out.data('tau', tau.to_dict())
    out.report(verify_twist(assoc, tau))
    if cfg.args.out:
        tau.save(cfg.args.out, OUTPUT["json_indent"])
        out.step(f"twist written to {cfg.args.out}")
    if cfg.args.search:
        out.report(integral_twist_search(assoc).report)


def cmd_verify_twist(cfg: RunConfig, out: Output):
    assoc = Associator(cfg.n, cfg.load_choice())
    out.banner(f"TWISTED ALGEBRA - n={cfg.n}, choice {cfg.choice}")
    tau = _twist(cfg, out)
    out.report(verify_twist(assoc, tau))
    algebra = TwistedArcAlgebra(OddArcAlgebra(cfg.n, assoc.choice), tau)
    algebra.build_cache(progress_callback=out.progress)
    samples = None if cfg.n <= 2 else cfg.samples
    out.report(twisted_associativity(algebra, samples, cfg.seed))
    out.report(twisted_anticommutation(algebra))


def cmd_classify(cfg: RunConfig, out: Output):
    args = cfg.args
    choice, other = cfg.load_choice(), load_choice(cfg.n, args.other)
    out.banner(f"CLASSIFY - n={cfg.n}, {cfg.choice} vs {args.other}")
    result = classify_twisted(choice, other) if args.twisted else classify(choice, other)
    out.data('classification', result.to_dict())
    out.report(result.report)


def cmd_verify_all(cfg: RunConfig, out: Output):
    n = cfg.n
    out.banner(f"FULL VERIFICATION - n={n}, choice {cfg.choice}")
    odd = _algebra(cfg, "odd", out)
    checks: list[tuple[str, int, Callable[[], CheckReport]]] = [
        ("diagonal", SIZE_GUARDS["max_n_center"], lambda: diagonal_subalgebra(odd)),
        ("supercommutation", SIZE_GUARDS["max_n_center"], lambda: supercommutation_report(odd)),
        ("mod 2", SIZE_GUARDS["max_n_twist"], lambda: mod2_agreement(odd)),
        ("springer", SIZE_GUARDS["max_n_springer"], lambda: springer_comparison(n)),
        ("iso", SIZE_GUARDS["max_n_iso"], lambda: verify_iso(odd)),
    ]
    if n >= 2:
        checks.insert(0, ("nonassociativity", SIZE_GUARDS["max_n"], lambda: nonassoc_witness(odd).report))
    assoc = Associator(n, odd.choice)
    checks += [
        ("cocycle", SIZE_GUARDS["max_n_twist"], lambda: verify_cocycle(assoc)),
        ("quasi-associativity", SIZE_GUARDS["max_n_twist"],
         lambda: quasi_associativity(odd, assoc, None if n <= 2 else cfg.samples, cfg.seed)),
    ]

    def twisted_suite() -> CheckReport:
        tau = solve_twist(assoc)
        r = verify_twist(assoc, tau)
        if not r:
            return r
        twisted = TwistedArcAlgebra(odd, tau)
        return twisted_associativity(twisted, None if n <= 2 else cfg.samples, cfg.seed)

    checks.append(("twist", SIZE_GUARDS["max_n_twist"], twisted_suite))
    if n <= 2:
        checks.append(("choices", 2, lambda: center_choice_independence(n, enumerate_all_choices(n))))
        checks.append(("classify all pairs", 2, lambda: classify_all_pairs(n)))
    checks += [
        ("classify", SIZE_GUARDS["max_n_iso"], lambda: classify(odd.choice, load_choice(n, "reversed")).report),
        ("classify twisted", SIZE_GUARDS["max_n_iso"],
         lambda: classify_twisted(odd.choice, load_choice(n, "reversed")).report),
    ]
    if n == 2:
        checks.append(("non-isomorphism", 2, non_iso_checks))
        for kind in ("odd", "even", "twisted"):
            for side in ("a", "b"):
                checks.append((f"golden {kind} {side}", 2, _golden_check(kind, side)))

    for label, guard, check in checks:
        if n > guard:
            out.step(f"{label}: skipped above n={guard}")
            continue
        out.step(label)
        out.report(check())


def _golden_check(kind: str, side: str) -> Callable[[], CheckReport]:
    def run() -> CheckReport:
        if kind == "twisted":
            algebra = TwistedArcAlgebra(OddArcAlgebra(2), explicit_twist())
        elif kind == "even":
            algebra = EvenArcAlgebra(2)
        else:
            algebra = OddArcAlgebra(2)
        record = table_record(algebra, side, kind)
        golden = load_golden(kind, side)
        r = CheckReport(f"{kind} table, side {side}, matches the golden file", golden is not None)
        if golden is None:
            return r.fail("golden file missing", path=golden_path(kind, side))
        if record['entries'] != golden['entries']:
            r.fail("entries differ", path=golden_path(kind, side))
        return r
    return run


COMMANDS = {
    "enumerate": cmd_enumerate,
    "table": cmd_table,
    "multiply": cmd_multiply,
    "center": cmd_center,
    "springer": cmd_springer,
    "verify-iso": cmd_verify_iso,
    "associator": cmd_associator,
    "twist": cmd_twist,
    "verify-twist": cmd_verify_twist,
    "classify": cmd_classify,
    "verify-all": cmd_verify_all,
}


def parse_args(argv=None) -> argparse.Namespace:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--n', type=int, required=True, help='Number of arcs')
    common.add_argument('--choice', type=str, default="canonical",
                        help='canonical, reversed, or a chronology JSON file')
    common.add_argument('--format', dest='fmt', choices=["text", "json"], default=OUTPUT["format"])
    common.add_argument('--seed', type=int, default=VERIFY_CONFIG["seed"],
                        help='Seed for sampled checks')
    common.add_argument('--samples', type=int, default=VERIFY_CONFIG["samples"],
                        help='Sampled triples when exhaustive checks are too large')

    parser = argparse.ArgumentParser(description='Odd Khovanov arc algebras')
    sub = parser.add_subparsers(dest='command', required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])

    kinds = ["odd", "even", "twisted"]
    for name in ("table", "multiply"):
        sub.choices[name].add_argument('--algebra', choices=kinds, default="odd")
        sub.choices[name].add_argument('--tau', type=str, default=None,
                                       help='Twist JSON file, or "explicit" for the n=2 twist')
    sub.choices["table"].add_argument('--side', type=str, default="a",
                                      help='a or b for n=2, otherwise a matching id')
    sub.choices["table"].add_argument('--write-golden', action='store_true',
                                      help='Regenerate the golden file instead of checking it')
    sub.choices["multiply"].add_argument('factors', nargs='+',
                                         help="Elements such as 'b1' or 'b2,-1*b1' or '1|0|0'")
    sub.choices["center"].add_argument('--even', action='store_true',
                                       help='Center of H^n instead of the odd center')
    sub.choices["center"].add_argument('--brute', action='store_true',
                                       help='Also check against the brute-force supercenter')
    sub.choices["springer"].add_argument('--relations', action='store_true',
                                         help='Include relation matrices in JSON output')
    sub.choices["twist"].add_argument('--out', type=str, default=None, help='Write tau as JSON')
    sub.choices["twist"].add_argument('--search', action='store_true',
                                      help='Also search for a twist by signs')
    sub.choices["verify-twist"].add_argument('--tau', type=str, default=None,
                                             help='Twist JSON file, or "explicit"; solved when omitted')
    sub.choices["classify"].add_argument('--other', type=str, default="reversed",
                                         help='Second choice: canonical, reversed, or a JSON file')
    sub.choices["classify"].add_argument('--twisted', action='store_true',
                                         help='Compare the twisted algebras')
    return parser.parse_args(argv)


def run(argv=None, console: Optional[Console] = None) -> int:
    try:
        args = parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    cfg = RunConfig(args.command, args.n, args.choice, args.fmt, args.seed, args.samples, args)
    out = Output(cfg, console)
    try:
        COMMANDS[cfg.command](cfg, out)
    except ArithmeticError as e:
        if not isinstance(e, OddArcError):
            raise
        # torsion, grading and cocycle errors count as failed checks
        out.report(CheckReport(f"{cfg.command}, n={cfg.n}", False).fail(
            str(e), error=type(e).__name__))
        return out.finish()
    except OddArcError as e:
        out.error(str(e))
        if out.json:
            out.finish()
        return EXIT_USAGE
    return out.finish()


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
