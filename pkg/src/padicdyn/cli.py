"""Command-line front end.

Commands: check, cycles, periods, bound, certify, selftest.  Output is
deterministic (canonical JSON or CSV on stdout, errors on stderr) and the
exit status encodes the failure class:

    0 success          3 enumeration budget exceeded
    1 domain error     4 bound report not stabilized
    2 parse error      5 no good prime for certification
"""

from __future__ import annotations

import argparse
import random
import sys
from fractions import Fraction

from .autos import AffineAuto, AutoWord, HenonFactor
from .dynamics import (
    DEFAULT_BUDGET,
    empirical_period_bound,
    enumerate_periodic_points,
    permutation_cycles,
)
from .errors import (
    BudgetExceeded,
    NoGoodPrime,
    NonIntegralCoefficient,
    NotStabilized,
    PadicDynError,
    ParseError,
    DegenerateReduction,
)
from .loci import check_iterate_locus, composed_degree, indeterminacy_locus, is_regular, is_special_henon
from .mapfile import build_rational_word, build_word, canonical_json, parse_document
from .padic import FieldSpec, teichmueller

EXIT_CODES = {
    ParseError: 2,
    BudgetExceeded: 3,
    NotStabilized: 4,
    NoGoodPrime: 5,
}


def _parse_levels(text: str) -> list[int]:
    try:
        levels = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad level list {text!r}") from exc
    if not levels or any(b <= a for a, b in zip(levels, levels[1:])):
        raise ParseError("levels must be a nonempty ascending list like 1,2,3")
    return levels


def _load(args) -> tuple:
    with open(args.input, "r", encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    spec, word = build_word(doc, args.precision)
    return doc, spec, word


def cmd_check(args) -> int:
    doc, spec, word = _load(args)
    n_max = args.nmax if args.nmax is not None else 3
    out = {
        "command": "check",
        "dimension": word.dim,
        "field": {"p": spec.p, "extension_degree": spec.f, "precision": spec.N},
    }
    if word.dim == 2:
        out["degree"] = composed_degree(word)
        out["locus"] = {
            "generic": indeterminacy_locus(word, "generic").to_literals(),
            "generic_inverse": indeterminacy_locus(word.inverse(), "generic").to_literals(),
        }
        try:
            out["locus"]["special"] = indeterminacy_locus(word, "special").to_literals()
            out["locus"]["special_inverse"] = indeterminacy_locus(
                word.inverse(), "special"
            ).to_literals()
        except (NonIntegralCoefficient, DegenerateReduction) as exc:
            out["locus"]["special"] = None
            out["locus"]["special_inverse"] = None
            out["locus"]["special_error"] = str(exc)
        out["regular"] = is_regular(word)
        out["special_henon"] = is_special_henon(word)
        out["iterate_locus_stable"] = check_iterate_locus(word, n_max)
        out["iterate_locus_nmax"] = n_max
    else:
        out["note"] = "loci and regularity are computed on the plane only"
    sys.stdout.write(canonical_json(out))
    return 0


def cmd_cycles(args) -> int:
    doc, spec, word = _load(args)
    levels = _parse_levels(args.levels or "1")
    lines = []
    for k in levels:
        table = permutation_cycles(word, k, args.budget)
        lines.append(f"# level {k}")
        lines.append("length,count")
        for length, count in table.to_rows():
            lines.append(f"{length},{count}")
    sys.stdout.write("\n".join(lines) + "\n")
    return 0


def cmd_periods(args) -> int:
    doc, spec, word = _load(args)
    n_max = args.nmax if args.nmax is not None else 4
    enum = enumerate_periodic_points(word, n_max, args.budget)
    out = {
        "command": "periods",
        "n_max": n_max,
        "records": [r.to_dict() for r in enum.records],
        "uncertified_cycles": [list(t) for t in enum.uncertified],
        "cycles_without_points": [list(t) for t in enum.empty_cycles],
    }
    sys.stdout.write(canonical_json(out))
    return 0


def cmd_bound(args) -> int:
    doc, spec, word = _load(args)
    levels = _parse_levels(args.levels or "1,2,3")
    report = empirical_period_bound(word, levels, args.budget)
    sys.stdout.write(canonical_json(report.to_dict()))
    if not report.stabilized:
        raise NotStabilized(f"spectra not stable over levels {levels}")
    return 0


def cmd_certify(args) -> int:
    from .rational import certify_rational

    with open(args.input, "r", encoding="utf-8") as fh:
        doc = parse_document(fh.read())
    if not doc.primes:
        raise ParseError("certify needs a nonempty 'primes' list in the document")
    word = build_rational_word(doc)
    levels = _parse_levels(args.levels or "1,2,3")
    claimed = [tuple(Fraction(c) for c in pt) for pt in doc.rational_periodic_points]
    cert = certify_rational(
        word,
        doc.primes,
        levels,
        args.precision or doc.precision,
        args.budget,
        claimed,
    )
    sys.stdout.write(canonical_json(cert.to_dict()))
    return 0


# ---------------------------------------------------------------------------
# selftest

def _random_integral_word(rng: random.Random, spec: FieldSpec) -> AutoWord:
    factors = []
    for _ in range(rng.randint(1, 3)):
        kind = rng.choice(("henon", "affine"))
        if kind == "henon":
            a = spec.from_int(rng.choice([1, 2, -1]))
            degree = rng.randint(2, 3)
            coeffs = [spec.from_int(rng.randint(-2, 2)) for _ in range(degree)] + [spec.one()]
            factors.append((HenonFactor(a, tuple(coeffs)), rng.random() < 0.5))
        else:
            # unit determinant keeps the inverse integral, so round trips
            # stay inside O and lose no absolute digits
            while True:
                rows = [[spec.from_int(rng.randint(-2, 2)) for _ in range(2)] for _ in range(2)]
                det = rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
                if not det.is_zero() and det.valuation() == 0:
                    break
            tr = tuple(spec.from_int(rng.randint(-2, 2)) for _ in range(2))
            factors.append((AffineAuto(tuple(tuple(r) for r in rows), tr), rng.random() < 0.5))
    return AutoWord(spec, 2, tuple(factors))


def cmd_selftest(args) -> int:
    rng = random.Random(args.seed)
    failures = 0

    def report(name: str, ok: bool) -> None:
        nonlocal failures
        print(("ok " if ok else "FAIL ") + name)
        failures += 0 if ok else 1

    q5 = FieldSpec(5, N=2)
    report("scalar division 1/2 = 13 mod 25", (q5.one() / q5.from_int(2)) == q5.from_int(13))
    report("teichmueller(2) = 7 mod 25", teichmueller(q5.from_int(2).residue()) == q5.from_int(7))
    q3 = FieldSpec(3, N=10)
    g = HenonFactor(q3.one(), (q3.zero(), q3.zero(), q3.one()))
    w = AutoWord.of(q3, g)
    table = permutation_cycles(w, 1)
    report("henon cycle table over F_3 is {1: 2, 7: 1}", table.counts == {1: 2, 7: 1})
    ok = True
    for _ in range(20):
        word = _random_integral_word(rng, q3)
        for _ in range(10):
            P = tuple(q3.from_int(rng.randint(-40, 40)) for _ in range(2))
            Q = word.inverse().apply(word.apply(P))
            ok = ok and all(a.congruent_to(b) for a, b in zip(Q, P))
    report("seeded inverse round trips are exact mod p^N", ok)
    report("special Henon predicate on x^2 - y", is_special_henon(w))
    return 1 if failures else 0


# ---------------------------------------------------------------------------

def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="padicdyn",
        description="arithmetic p-adic dynamics of plane polynomial automorphisms",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name, fn in (
        ("check", cmd_check),
        ("cycles", cmd_cycles),
        ("periods", cmd_periods),
        ("bound", cmd_bound),
        ("certify", cmd_certify),
        ("selftest", cmd_selftest),
    ):
        p = sub.add_parser(name)
        if name != "selftest":
            p.add_argument("--input", required=True, help="map description file")
        p.add_argument("--levels", default=None, help="ascending residue levels, e.g. 1,2,3")
        p.add_argument("--nmax", type=int, default=None, help="maximal period / iterate count")
        p.add_argument("--precision", type=int, default=None, help="override working precision")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration point budget")
        p.add_argument("--format", default="json", choices=("json", "csv"))
        p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
        p.set_defaults(fn=fn)
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except PadicDynError as exc:
        sys.stderr.write(f"error: {exc}\n")
        for klass, code in EXIT_CODES.items():
            if isinstance(exc, klass):
                return code
        return 1
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
