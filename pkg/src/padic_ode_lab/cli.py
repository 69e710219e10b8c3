"""Command-line front end: ``padic-lab verify | derive | eval``.

Exit status: 0 when everything checks out, 1 for a mathematical
discrepancy, 2 for bad input (flags, parse errors, domain violations).
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import __version__
from .factorial_series import FactorialPolynomial, FactorialSeries, evaluate_padic
from .ode_lab import (
    ConstructionError,
    FirstOrderForm,
    euler_lagrange,
    load_lagrangian,
    prop1_iterate,
    prop2_shift,
    verify_formal,
)
from .ode_lab.catalog import eq_2_1
from .ode_lab.construct import product_form_series
from .padic_core import DomainError, PadicError, is_prime, rational_reconstruction
from .parsing import ParseError, parse_polynomial, parse_rational, parse_rational_function
from .suites import SUITES, run_suite
from .sums import DerivationError, derive_uv

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2
CHECK_ORDER = 40


class UsageError(Exception):
    pass


def _primes(text: str) -> list[int]:
    try:
        primes = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"primes must be a comma-separated list of integers, got {text!r}")
    bad = [p for p in primes if not is_prime(p)]
    if not primes or bad:
        raise argparse.ArgumentTypeError(f"not prime: {bad or text!r}")
    return sorted(set(primes))


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _order(text: str) -> int:
    n = _positive(text)
    if n < 10:
        raise argparse.ArgumentTypeError("order must be at least 10")
    return n


def _prime(text: str) -> int:
    primes = _primes(text)
    if len(primes) != 1:
        raise argparse.ArgumentTypeError(f"expected a single prime, got {text!r}")
    return primes[0]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="padic-lab", description="p-adic factorial series toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--primes", type=_primes, default=[2, 3, 5, 7], help="comma-separated primes (default 2,3,5,7)")
    v.add_argument("--prec", type=_positive, default=64, help="p-adic precision M (default 64)")
    v.add_argument("--order", type=_order, default=60, help="formal series order N (default 60)")
    v.add_argument("--format", choices=("text", "json", "csv"), default="text")
    v.add_argument("--out", type=Path, help="write the report here instead of stdout")

    d = sub.add_parser("derive", help="derive identities and equations")
    g = d.add_mutually_exclusive_group(required=True)
    g.add_argument("--k", type=_positive, help="print U_k and V_(k-1)")
    g.add_argument("--prop1", metavar="A;B;C;mu", help="iterate the derivative step mu times")
    g.add_argument("--shift", type=int, metavar="m", help="equation for x^m times the solution")
    g.add_argument("--euler-lagrange", metavar="NAME|FILE", help="builtin Lagrangian name or JSON file")
    d.add_argument("--base", metavar="A;B;C", help="first-order equation for --shift (default x^2; x-1; -1)")
    d.add_argument("--solution", default="1", metavar="P(n)",
                   help="P with sum n! P(n) x^n solving the input equation (default 1)")

    e = sub.add_parser("eval", help="evaluate sum n! P(n) x^n p-adically")
    e.add_argument("--series", required=True, metavar="P(n)")
    e.add_argument("--x", required=True, metavar="RATIONAL")
    e.add_argument("--p", required=True, type=_prime)
    e.add_argument("--prec", type=_positive, default=20)
    return parser


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    report = run_suite(args.suite, args.primes, args.prec, args.order)
    text = report.render(args.format)
    if args.out:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return report.exit_code()


# -- derive ------------------------------------------------------------------

def _parse_form(text: str, parts: int) -> list[str]:
    pieces = [s.strip() for s in text.split(";")]
    if len(pieces) != parts:
        raise UsageError(f"expected {parts} ';'-separated fields, got {len(pieces)}: {text!r}")
    return pieces


def _form(pieces: list[str]) -> FirstOrderForm:
    return FirstOrderForm.of(*(parse_rational_function(s) for s in pieces))


def _status_line(result) -> str:
    return f"status: {'verified' if result.verified else 'discrepancy'} ({result.describe()})"


def cmd_derive(args) -> int:
    if args.k is not None:
        ident = derive_uv(args.k)
        print(f"U_{args.k} = {ident.U}")
        print(f"V_{args.k - 1} = {ident.V}")
        print(f"x^{args.k}*S_{args.k} + U_{args.k}*F0 = V_{args.k - 1}, where S_k = sum n! n^k x^n")
        print("status: verified (series check through x^30)")
        return EXIT_OK

    if args.euler_lagrange is not None:
        try:
            L = load_lagrangian(args.euler_lagrange)
        except OSError as exc:
            raise UsageError(f"cannot read Lagrangian {args.euler_lagrange!r}: {exc}")
        ode = euler_lagrange(L)
        print(ode.to_str("t", "q"))
        return EXIT_OK

    P = FactorialPolynomial(parse_polynomial(args.solution, var="n"))
    if args.prop1 is not None:
        *fields, mu_text = _parse_form(args.prop1, 4)
        mu = parse_rational(mu_text)
        if mu.denominator != 1 or mu < 0:
            raise UsageError(f"mu must be a non-negative integer, got {mu_text!r}")
        form = _form(fields)
        mu = int(mu)
        ode = prop1_iterate(form, mu=mu)
        series = FactorialSeries(product_form_series(P, mu))
        base_ok = verify_formal(form.to_ode(), FactorialSeries(P), CHECK_ORDER)
    else:
        form = _form(_parse_form(args.base, 3)) if args.base else eq_2_1().as_first_order()
        if args.shift < 0:
            raise UsageError("shift must be non-negative")
        ode = prop2_shift(form, args.shift)
        series = FactorialSeries(P, args.shift)
        base_ok = verify_formal(form.to_ode(), FactorialSeries(P), CHECK_ORDER)
    print(ode)
    print(f"solution: {series}")
    if not base_ok.verified:
        print(f"warning: input equation is not solved by sum n! [{P}] x^n ({base_ok.describe()})")
    res = verify_formal(ode, series, CHECK_ORDER)
    print(_status_line(res))
    return EXIT_OK if res.verified else EXIT_DISCREPANCY


# -- eval --------------------------------------------------------------------

def cmd_eval(args) -> int:
    P = parse_polynomial(args.series, var="n")
    x = parse_rational(args.x)
    p, M = args.p, args.prec
    F = FactorialSeries(P)
    value = evaluate_padic(F, x, M, p)
    print(f"sum n! [{P.to_str('n')}] x^n at x = {x}, p = {p}")
    print(f"terms summed: {F.cut_index(p, M)}")
    print(f"valuation: {value.valuation}")
    print(f"digits: {value.render_digits(min(M, 24))}")
    if value.valuation >= 0:
        r = value.residue()
        sym = r - p**M if r > p**M // 2 else r
        print(f"value: {r} mod {p}^{M} (symmetric {sym})")
    else:
        print(f"value: {value}")
    q = rational_reconstruction(value)
    if q is not None:
        print(f"small rational with these digits: {q}")
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "derive": cmd_derive, "eval": cmd_eval}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (ParseError, UsageError, DomainError, ConstructionError) as exc:
        print(f"padic-lab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DerivationError, PadicError) as exc:
        print(f"padic-lab: {exc}", file=sys.stderr)
        return EXIT_DISCREPANCY


if __name__ == "__main__":
    sys.exit(main())
