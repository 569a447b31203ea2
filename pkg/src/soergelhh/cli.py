"""Command-line surface: braid and Weyl-element inputs, text or JSON out.

Subcommands:

* bs-hh              Hochschild homology of a Bott-Samelson bimodule:
                     bigraded table, shift-normalized Hilbert series, and
                     the freeness report with its fiber polynomial.
* kr                 triply graded table of a braid closure (normalized
                     by the frozen invariance shifts unless --raw).
* homfly             the two-variable trace invariant of a braid closure.
* euler-check        PASS/FAIL comparison of the graded Euler
                     characteristic against the trace oracle.
* smooth-series      smooth-case degrees k_i of a Weyl group element and
                     the predicted Hochschild Hilbert series.
* schubert-poincare  Poincare polynomial of a Bruhat interval and its
                     factorization into q-integers.

Exit codes: 0 success, 1 failed check, 2 parse error, 3 computation
inapplicable, 4 cutoff insufficient.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .groundring import series_to_str
from .hecke import homfly, homfly_skein, homfly_to_str
from .koszul import freeness_check, hochschild_dims, series_from_table, table_to_json
from .rouquier import (
    BraidWord,
    TruncationError,
    euler_characteristic,
    kr_homology,
    normalize,
    triply_to_json,
)
from .soergel import build_bs
from .weyl import (
    LemmaInapplicableError,
    WeylElement,
    bruhat_poincare,
    element_to_permutation,
    is_smooth_typeA,
    longest_element,
    permutation_element,
    positive_roots,
    smooth_degrees,
    smooth_hilbert_series,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_PARSE = 2
EXIT_INAPPLICABLE = 3
EXIT_TRUNCATION = 4


class ParseError(ValueError):
    pass


def parse_braid(s: str, strands=None) -> BraidWord:
    """Braid word from text: nonzero integers split on space or comma.

    Without an explicit strand count the braid closes on max|letter| + 1
    strands; an empty word then has nowhere to live and is an error.
    """
    tokens = [t for t in s.replace(",", " ").split() if t]
    letters = []
    for t in tokens:
        try:
            x = int(t)
        except ValueError as exc:
            raise ParseError(f"bad braid letter {t!r}") from exc
        if x == 0:
            raise ParseError("braid letters must be nonzero")
        letters.append(x)
    if strands is None:
        if not letters:
            raise ParseError("empty braid word needs an explicit strand count")
        strands = max(abs(x) for x in letters) + 1
    try:
        return BraidWord(strands, tuple(letters))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def parse_word(s: str) -> list:
    tokens = [t for t in s.replace(",", " ").split() if t]
    out = []
    for t in tokens:
        try:
            i = int(t)
        except ValueError as exc:
            raise ParseError(f"bad simple index {t!r}") from exc
        if i < 1:
            raise ParseError("simple indices are positive")
        out.append(i)
    return out


def parse_element(spec: str, system) -> WeylElement:
    """Weyl element from text: `w0`, `e`, one-line `3,1,2` (type A), or a
    space-separated word of simple indices."""
    spec = spec.strip()
    if spec in ("w0", "W0"):
        return longest_element(system)
    if spec in ("e", "id", "identity"):
        return WeylElement.identity(system)
    if "," in spec:
        if system.letter != "A":
            raise ParseError("one-line permutations are a type A input")
        try:
            perm = [int(t) for t in spec.split(",")]
        except ValueError as exc:
            raise ParseError(f"bad permutation {spec!r}") from exc
        if len(perm) != system.rank + 1:
            raise ParseError(
                f"permutation length {len(perm)} does not match {system.type_name}"
            )
        return permutation_element(perm)
    word = parse_word(spec)
    for i in word:
        if i > system.rank:
            raise ParseError(f"simple index {i} out of range for {system.type_name}")
    return WeylElement.from_word(system, word)


def _emit(data: dict, text_lines: list, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(data))
    else:
        for line in text_lines:
            print(line)


def cmd_bs_hh(args) -> int:
    word = parse_word(args.word) if args.word else []
    n = args.n if args.n else (max(word) + 1 if word else 1)
    for i in word:
        if i > n - 1:
            raise ParseError(f"word letter {i} out of range for n={n}")
    M = build_bs(word, n)
    table = hochschild_dims(M, 2 * args.cutoff)
    series, prefactor = series_from_table(table, normalize=True)
    raw = series_from_table(table)
    rep = freeness_check(raw, n)
    data = {
        "word": word,
        "n": n,
        "cutoff": args.cutoff,
        "table": json.loads(table_to_json(table)),
        "series": series_to_str(series),
        "series_valid_through": str(series.qmax),
        "series_prefactor": {"a": prefactor[0], "q": str(prefactor[1])},
        "freeness": {
            "free": rep.free,
            "fiber": series_to_str(rep.fiber),
            "fiber_at_one": str(rep.fiber_at_one),
            "reason": rep.reason,
        },
    }
    lines = [
        f"word {word or '()'} over GL_{n}, cutoff q^{args.cutoff}",
        f"normalized series: {series_to_str(series)}",
        f"  (valid through q^{series.qmax}; prefactor a^{prefactor[0]} q^{prefactor[1]})",
        f"freeness: {'PASS' if rep.free else 'FAIL'}"
        + (f" ({rep.reason})" if rep.reason else ""),
        f"fiber polynomial: {series_to_str(rep.fiber)}",
        f"fiber at a=q=1: {rep.fiber_at_one}",
    ]
    _emit(data, lines, args.format)
    return EXIT_OK


def cmd_kr(args) -> int:
    b = parse_braid(args.braid, args.strands)
    table = kr_homology(b, args.cutoff)
    if args.normalize != "off":
        table = normalize(table, b)
    data = json.loads(triply_to_json(table))
    lines = [
        f"braid [{b}] on {b.strands} strands, cutoff q^{args.cutoff},"
        f" shift a^{table.shift['a']} q^{table.shift['q']} t^{table.shift['t']}"
    ]
    for (i, q, t), m in sorted(table.entries.items()):
        lines.append(f"  a^{i} q^{q} t^{t}: {m}")
    _emit(data, lines, args.format)
    return EXIT_OK


def cmd_homfly(args) -> int:
    b = parse_braid(args.braid, args.strands)
    P = homfly(b)
    data = {"braid": list(b.letters), "strands": b.strands, "homfly": homfly_to_str(P)}
    _emit(data, [homfly_to_str(P)], args.format)
    return EXIT_OK


def cmd_euler_check(args) -> int:
    from .decategorify import euler_check

    b = parse_braid(args.braid, args.strands)
    ok, lhs, rhs, qbound = euler_check(b, args.cutoff)
    verdict = "PASS" if ok else "FAIL"
    data = {
        "braid": list(b.letters),
        "strands": b.strands,
        "result": verdict,
        "compared_through": str(qbound),
        "euler": series_to_str(lhs),
        "oracle": series_to_str(rhs),
    }
    _emit(data, [f"{verdict} (compared through q^{qbound})"], args.format)
    return EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_smooth_series(args) -> int:
    system = positive_roots(args.type)
    w = parse_element(args.element, system)
    if args.pad == "gl":
        pad_to = system.rank + (1 if system.letter == "A" else 0)
    elif args.pad == "sl":
        pad_to = system.rank
    else:
        pad_to = None
    ks = smooth_degrees(w, pad_to=pad_to)
    series = smooth_hilbert_series(ks, args.cutoff)
    if system.letter == "A":
        verdict = "smooth" if is_smooth_typeA(element_to_permutation(w)) else "singular"
    else:
        verdict = "assumed smooth (no criterion outside type A)"
    data = {
        "type": system.type_name,
        "element_word": list(w.reduced_word()),
        "k": ks,
        "series": series_to_str(series),
        "cutoff": args.cutoff,
        "smoothness": verdict,
    }
    lines = [
        f"element {list(w.reduced_word())} in {system.type_name}: {verdict}",
        f"k = {ks}",
        f"series through q^{args.cutoff}: {series_to_str(series)}",
    ]
    _emit(data, lines, args.format)
    return EXIT_OK


def cmd_schubert_poincare(args) -> int:
    system = positive_roots(args.type)
    w = parse_element(args.element, system)
    res = bruhat_poincare(w)
    data = {
        "type": system.type_name,
        "element_word": list(w.reduced_word()),
        "poincare": res.polynomial_str(),
        "coefficients": res.coeffs,
        "factors": res.factors,
    }
    lines = [
        f"P(q) = {res.polynomial_str()}",
        "factors: "
        + (
            " * ".join(f"[{k}]" for k in res.factors)
            if res.factors
            else ("1" if res.factors == [] else "does not factor")
        ),
    ]
    _emit(data, lines, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="soergelhh",
        description="Hochschild homology of Bott-Samelson bimodules and"
        " triply graded homology of braid closures (exact arithmetic).",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bs-hh", help="Hochschild homology of a Bott-Samelson word")
    p.add_argument("--word", default="", help="simple indices, e.g. '1 2 1'")
    p.add_argument("--n", type=int, default=None, help="number of variables (GL_n)")
    p.add_argument("--cutoff", type=int, default=20, help="q-degree cutoff")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_bs_hh)

    p = sub.add_parser("kr", help="triply graded table of a braid closure")
    p.add_argument("--braid", required=True, help="letters, e.g. '1 -2 1 -2'")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--cutoff", type=int, default=8, help="q-degree cutoff")
    p.add_argument("--normalize", choices=("on", "off"), default="on")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_kr)

    p = sub.add_parser("homfly", help="trace invariant of a braid closure")
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_homfly)

    p = sub.add_parser("euler-check", help="Euler characteristic vs trace oracle")
    p.add_argument("--braid", required=True)
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--cutoff", type=int, default=6, help="q-degree cutoff")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_euler_check)

    p = sub.add_parser("smooth-series", help="smooth-case degrees and series")
    p.add_argument("--type", required=True, help="Cartan type, e.g. A2")
    p.add_argument("--element", required=True, help="'w0', '3,1,2', or a word '1 2'")
    p.add_argument("--pad", choices=("gl", "sl", "none"), default="gl")
    p.add_argument("--cutoff", type=int, default=20)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_smooth_series)

    p = sub.add_parser("schubert-poincare", help="Bruhat interval Poincare polynomial")
    p.add_argument("--type", required=True)
    p.add_argument("--element", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_schubert_poincare)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on bad flags, which matches the parse-error code
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except LemmaInapplicableError as exc:
        print(f"computation inapplicable: {exc}", file=sys.stderr)
        return EXIT_INAPPLICABLE
    except TruncationError as exc:
        print(f"cutoff insufficient: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION


if __name__ == "__main__":
    sys.exit(main())
