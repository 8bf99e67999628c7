"""Command-line front end.

Exit codes: 0 success/verified, 1 checked and negative, 2 usage or input
error, 3 budget exceeded, 4 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import __version__
from .certificate import certify_missing_trace, dumps
from .cyclotomic import check_ell, lemma2_product, tau_c_displayed, verify_lemma2, verify_prefactorization
from .errors import BudgetExceeded, InvariantViolation
from .fields import FieldSpec, make_field
from .kernel import DEFAULT_BUDGET
from .numtheory import corollary_conditions, find_primes, theorem_conditions
from .oracle import brute_psl2_image, brute_trace_image, realize_triple, sl2_order
from .search import word_search
from .trace import S, T, U, format_polynomial, trace_polynomial
from .words import format_word, parse, theorem_word

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET, EXIT_INTERNAL = 0, 1, 2, 3, 4
DEFAULT_MAX_K = 6


@dataclass
class CommandResult:
    status: int
    payload: dict = field(default_factory=dict)
    human_summary: str = ""

    def document(self) -> str:
        return dumps(self.payload)


def _doc(command: str, **fields) -> dict:
    return {"command": command, "library_version": __version__, **fields}


def parse_element(text: str, fld: FieldSpec):
    """An int, or a little-endian coefficient vector like ``[1,2,0]`` or ``1,2,0``."""
    text = text.strip()
    if text.startswith("["):
        values = json.loads(text)
    elif "," in text:
        values = [int(v) for v in text.split(",")]
    else:
        return fld(int(text))
    if not isinstance(values, list) or not all(isinstance(v, int) for v in values):
        raise ValueError(f"bad field element {text!r}")
    return fld(values)


def parse_field(text: str) -> FieldSpec:
    """``p`` or ``p^n``."""
    p, _, n = text.partition("^")
    return make_field(int(p), int(n) if n else 1)


def cmd_trace(word_text: str) -> CommandResult:
    w = parse(word_text)
    tau = trace_polynomial(w)
    text = format_polynomial(tau)
    payload = _doc("trace", word=format_word(w), trace_polynomial=text,
                   terms=[[list(m), c] for m, c in tau.items()])
    return CommandResult(EXIT_OK, payload, text)


def cmd_verify_lemmas(k: int, max_k: int = DEFAULT_MAX_K) -> CommandResult:
    check_ell(k)
    if k > max_k:
        raise BudgetExceeded(f"k={k} exceeds the configured maximum {max_k}")
    panel = {"s": S, "t": T, "u": U, "tau(c)": tau_c_displayed()}
    pre = {name: verify_prefactorization(k, tw) for name, tw in panel.items()}
    lemma2 = verify_lemma2(k)
    ok = lemma2 and all(pre.values())
    payload = _doc("verify-lemmas", k=k, ell=2 * k + 1, prefactorization=pre, lemma2=lemma2,
                   lemma2_expansion_terms=len(lemma2_product(k).terms), passed=ok)
    lines = [f"prefactorization k={k} tau(w)={name}: {'ok' if v else 'FAIL'}" for name, v in pre.items()]
    lines.append(f"factorization of tau(theorem_word({k})) over Z[zeta_{2 * k + 1}]: {'ok' if lemma2 else 'FAIL'}")
    # a false result here contradicts a theorem, i.e. a bug
    return CommandResult(EXIT_OK if ok else EXIT_INTERNAL, payload, "\n".join(lines))


def cmd_certify(k: int, p: int, n: int, target: str = "0", budget: int = DEFAULT_BUDGET,
                threads: int = 1) -> CommandResult:
    fld = make_field(p, n)
    tgt = parse_element(target, fld)
    report = theorem_conditions(k, p, n) if k >= 2 else None
    cert = certify_missing_trace(theorem_word(k), fld, tgt, k=k, budget=budget, threads=threads)
    payload = _doc("certify", certificate=cert.to_dict(),
                   theorem_conditions=report.to_dict() if report else None,
                   theorem_applicable=bool(report and report.applicable))
    status = "MISSING" if cert.missing else "NotMissing"
    summary = (f"{status}: trace {list(tgt.coeffs)} over F_{fld.q} for {cert.word} "
               f"({cert.evaluations} evaluations; theorem applicable: {payload['theorem_applicable']})")
    return CommandResult(EXIT_OK if cert.missing else EXIT_NEGATIVE, payload, summary)


def cmd_certify_word(word_text: str, p: int, n: int, target: str = "0",
                     budget: int = DEFAULT_BUDGET, threads: int = 1) -> CommandResult:
    """Certificate for an arbitrary word (no theorem hypotheses attached)."""
    fld = make_field(p, n)
    tgt = parse_element(target, fld)
    cert = certify_missing_trace(parse(word_text), fld, tgt, budget=budget, threads=threads)
    payload = _doc("certify", certificate=cert.to_dict(), theorem_conditions=None, theorem_applicable=False)
    status = "MISSING" if cert.missing else "NotMissing"
    return CommandResult(EXIT_OK if cert.missing else EXIT_NEGATIVE, payload,
                         f"{status}: trace {list(tgt.coeffs)} over F_{fld.q} for {cert.word}")


def cmd_conditions(k: int, p: int, n: Optional[int] = None) -> CommandResult:
    report = theorem_conditions(k, p, n) if n is not None else corollary_conditions(k, p)
    payload = _doc("conditions", report=report.to_dict())
    summary = f"{report.route} conditions for k={k} p={p}" + (f" n={n}" if n is not None else "")
    summary += f": {'applicable' if report.applicable else 'not applicable'} (m={report.m})"
    return CommandResult(EXIT_OK if report.applicable else EXIT_NEGATIVE, payload, summary)


def cmd_find_primes(k: int, bound: int) -> CommandResult:
    primes = find_primes(k, bound)
    payload = _doc("find-primes", k=k, bound=bound, primes=primes)
    return CommandResult(EXIT_OK, payload, " ".join(map(str, primes)))


def cmd_brute(word_text: str, p: int, n: int, target: str = "0", budget: Optional[int] = None,
              psl: bool = False) -> CommandResult:
    w = parse(word_text)
    fld = make_field(p, n)
    tgt = parse_element(target, fld)
    image = brute_trace_image(w, fld, budget=budget) if budget else brute_trace_image(w, fld)
    missing = tgt not in image
    payload = _doc("brute", word=format_word(w), field=fld.describe(), target=list(tgt.coeffs),
                   missing=missing, pairs=sl2_order(fld.q) ** 2,
                   attained=[list(a.coeffs) for a in image.attained()],
                   full_missing_set=[list(a.coeffs) for a in image.missing()])
    if psl:
        payload["psl2_image"] = brute_psl2_image(w, fld).to_dict()
    summary = (f"{'MISSING' if missing else 'NotMissing'}: trace {list(tgt.coeffs)} over SL2({fld.q}) "
               f"for {format_word(w)}; missed traces {payload['full_missing_set']}")
    return CommandResult(EXIT_OK if missing else EXIT_NEGATIVE, payload, summary)


def cmd_search(max_len: int, fields: Sequence[str], budget: int = DEFAULT_BUDGET) -> CommandResult:
    report = word_search(max_len, [parse_field(f) for f in fields], budget=budget)
    payload = _doc("search", report=report)
    lines = [f"{e['word']}  missing {e['missing']}" + ("  (proper power)" if e["proper_power"] else "")
             for e in report["flagged"]]
    lines.append(f"{report['classes']} classes, {len(report['flagged'])} flagged")
    return CommandResult(EXIT_OK, payload, "\n".join(lines))


def cmd_realize(s: str, t: str, u: str, p: int, n: int) -> CommandResult:
    fld = make_field(p, n)
    vals = [parse_element(v, fld) for v in (s, t, u)]
    pair = realize_triple(*vals, fld)
    payload = _doc("realize", field=fld.describe(), triple=[list(v.coeffs) for v in vals],
                   realized=pair is not None,
                   x=pair[0].to_list() if pair else None, y=pair[1].to_list() if pair else None)
    if pair is None:
        return CommandResult(EXIT_NEGATIVE, payload, "no realization found")
    return CommandResult(EXIT_OK, payload, f"x = {pair[0].to_list()}\ny = {pair[1].to_list()}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the structured document to PATH ('-' for stdout)")
    common.add_argument("--budget", type=int, default=None, help="maximum evaluations")
    common.add_argument("--threads", type=int, default=1, help="worker threads for the evaluation kernel")

    parser = argparse.ArgumentParser(prog="wordmaps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("trace", parents=[common], help="trace polynomial of a word")
    p.add_argument("word")

    p = sub.add_parser("verify-lemmas", parents=[common], help="verify the factorization identities for k")
    p.add_argument("k", type=int)
    p.add_argument("--max-k", type=int, default=DEFAULT_MAX_K)

    p = sub.add_parser("certify", parents=[common], help="exhaustive certificate for x1^2 [x1^-2, x2^-1]^k")
    p.add_argument("k", type=int)
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--target", default="0")
    p.add_argument("--word", default=None, help="certify this word instead of the theorem word")

    p = sub.add_parser("conditions", parents=[common], help="theorem (with n) or corollary hypotheses")
    p.add_argument("k", type=int)
    p.add_argument("p", type=int)
    p.add_argument("n", type=int, nargs="?")

    p = sub.add_parser("find-primes", parents=[common], help="primes satisfying the corollary")
    p.add_argument("k", type=int)
    p.add_argument("bound", type=int)

    p = sub.add_parser("brute", parents=[common], help="trace image of a word map on SL2(q) by enumeration")
    p.add_argument("word")
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--target", default="0")
    p.add_argument("--psl", action="store_true", help="also compute the image in PSL2(q)")

    p = sub.add_parser("search", parents=[common], help="short words with non-surjective trace image")
    p.add_argument("max_len", type=int)
    p.add_argument("fields", nargs="+", metavar="FIELD", help="p or p^n")

    p = sub.add_parser("realize", parents=[common], help="matrices with prescribed trace triple")
    for name in ("s", "t", "u"):
        p.add_argument(name)
    p.add_argument("p", type=int)
    p.add_argument("n", type=int)
    return parser


def run(args: argparse.Namespace) -> CommandResult:
    budget = args.budget if args.budget is not None else DEFAULT_BUDGET
    c = args.command
    if c == "trace":
        return cmd_trace(args.word)
    if c == "verify-lemmas":
        return cmd_verify_lemmas(args.k, args.max_k)
    if c == "certify":
        if args.word is not None:
            return cmd_certify_word(args.word, args.p, args.n, args.target, budget, args.threads)
        return cmd_certify(args.k, args.p, args.n, args.target, budget, args.threads)
    if c == "conditions":
        return cmd_conditions(args.k, args.p, args.n)
    if c == "find-primes":
        return cmd_find_primes(args.k, args.bound)
    if c == "brute":
        return cmd_brute(args.word, args.p, args.n, args.target, args.budget, args.psl)
    if c == "search":
        return cmd_search(args.max_len, args.fields, budget)
    if c == "realize":
        return cmd_realize(args.s, args.t, args.u, args.p, args.n)
    raise AssertionError(c)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        result = run(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except InvariantViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json == "-":
        sys.stdout.write(result.document())
    else:
        print(result.human_summary)
        if args.json:
            with open(args.json, "w", encoding="utf-8") as fh:
                fh.write(result.document())
    return result.status


if __name__ == "__main__":
    sys.exit(main())
