"""Command-line front end.

Every verb is a pure function of its inputs: a fixed seed reproduces the
byte-identical JSON report, and verification verdicts do not depend on the
seed at all.  Exit status 0 means success or verified, 1 an input problem,
2 a verification failure worth attention.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .cplx import (
    ComplexStructureEq,
    identify_underlying,
    invariants,
    realify,
)
from .dga import classify_f1, f1_presentation
from .lie import Ambiguous, NoMatch, classify, fingerprint
from .mirror import (
    _EXPECTED_VERDICT,
    _excluded_row,
    _h1_iso,
    _sample_h6_params,
    _sample_h8_params,
    explicit_mirror_iso,
    find_symplectic,
    h11_obstruction,
    sample_admissible_h11,
    symplectic_exists,
    verify_theorem_main,
)
from .notation import CATALOG_EQUATIONS, ParseError, parse, print_algebra
from .scalars import ApproxComplex, parse_scalar, rationalize
from .tables import (
    GF1_CHECKMARKS,
    TABF1_ROWS,
    TABLE1_ROWS,
    matches_table1_row,
    matches_tabf1_row,
    sample_table1_row,
    sample_tabf1_row,
)


class InputError(ValueError):
    pass


def _read_input(arg):
    if arg is not None:
        return arg
    text = sys.stdin.read().strip()
    if not text:
        raise InputError("no input given (argument or standard input)")
    return text


def _scalar_from_json(value, tol):
    if isinstance(value, str):
        return parse_scalar(value)
    if isinstance(value, bool):
        raise InputError(f"bad scalar {value!r}")
    if isinstance(value, int):
        return parse_scalar(str(value))
    if isinstance(value, float):
        return rationalize(ApproxComplex(value, 0.0, tol))
    raise InputError(f"bad scalar {value!r}")


def _eq_from_text(text, tol):
    """A structure equation from its JSON form {epsilon, rho, A, B, C, D}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as bad:
        raise InputError(f"invalid JSON at position {bad.pos}: {bad.msg}")
    if not isinstance(obj, dict):
        raise InputError("expected a JSON object with keys epsilon, rho, A, B, C, D")
    keys = ("epsilon", "rho", "A", "B", "C", "D")
    missing = [k for k in keys if k not in obj]
    if missing:
        raise InputError(f"missing keys: {', '.join(missing)}")
    vals = [_scalar_from_json(obj[k], tol) for k in keys]
    try:
        return ComplexStructureEq(*vals)
    except ValueError as bad:
        raise InputError(str(bad))


def _algebra_from_text(text):
    """A Lie algebra from a catalog name or structure-equation shorthand."""
    name = text.strip()
    if name in CATALOG_EQUATIONS:
        return parse(CATALOG_EQUATIONS[name]), name
    try:
        return parse(name), None
    except ParseError:
        raise
    except ValueError as bad:
        raise InputError(str(bad))


def _emit(payload, fmt, text_fn):
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(text_fn(payload))


# -- verbs ---------------------------------------------------------------------


def _cmd_parse(args):
    g, name = _algebra_from_text(_read_input(args.input))
    payload = {
        "equations": print_algebra(g),
        "generators": list(g.space.names),
        "dim": g.dim,
    }
    if name:
        payload["name"] = name
    return 0, payload, lambda p: p["equations"]


def _cmd_classify(args):
    text = _read_input(args.input)
    if text.lstrip().startswith("{"):
        eq = _eq_from_text(text, args.tol)
        name = identify_underlying(eq)
        g = realify(eq)
    else:
        g, _ = _algebra_from_text(text)
        try:
            name = classify(g)
        except (NoMatch, Ambiguous) as bad:
            raise InputError(str(bad))
    payload = {"name": name, "fingerprint": fingerprint(g).to_json()}
    return 0, payload, lambda p: p["name"]


def _cmd_invariants(args):
    eq = _eq_from_text(_read_input(args.input), args.tol)
    prof = invariants(eq)
    payload = prof.to_json()
    payload["underlying"] = identify_underlying(eq)
    payload["disc"] = str(prof.disc)
    return 0, payload, lambda p: "\n".join(
        f"{k}: {p[k]}" for k in sorted(p))


def _cmd_f1(args):
    eq = _eq_from_text(_read_input(args.input), args.tol)
    pres = f1_presentation(eq)
    payload = pres.to_json()
    payload["degree1_class"] = classify_f1(eq)

    def show(table):
        return " + ".join(f"({c})*{m}" for m, c in table.items()) or "0"

    def text(p):
        lines = [f"degree-1 class: {p['degree1_class']}"]
        for k, v in p["d"].items():
            lines.append(f"d {k} = {show(v)}")
        for k, v in p["brackets"].items():
            lines.append(f"{k} = {show(v)}")
        return "\n".join(lines)

    return 0, payload, text


def _cmd_symplectic(args):
    text = _read_input(args.input)
    g, name = _algebra_from_text(text)
    exists = symplectic_exists(g)
    payload = {
        "algebra": name or print_algebra(g),
        "exists": exists,
        "witness": None,
    }
    if exists:
        payload["witness"] = str(find_symplectic(g, seed=args.seed).omega)
    return 0, payload, lambda p: (
        f"{p['algebra']}: " + (f"symplectic, e.g. {p['witness']}"
                               if p["exists"] else "no symplectic structure"))


def _cmd_mirror_check(args):
    name = _read_input(args.input).strip()
    if name not in _EXPECTED_VERDICT:
        raise InputError(f"unknown catalog name {name!r}")
    rng = random.Random(args.seed)
    expected = _EXPECTED_VERDICT[name]
    payload = {"name": name, "expected": expected}
    if name == "h1":
        iso = _h1_iso()
        payload.update(verdict="self-mirror", iso=iso.to_json(), samples=1)
    elif name in ("h6", "h8"):
        sampler = _sample_h6_params if name == "h6" else _sample_h8_params
        iso = None
        for k in range(args.samples):
            params = sampler(rng) if name == "h6" else sampler(rng, k)
            iso = explicit_mirror_iso(name, params)
        payload.update(verdict="self-mirror", iso=iso.to_json(),
                       samples=args.samples)
    elif name in ("h9", "h10"):
        iso = explicit_mirror_iso(name)
        payload.update(verdict="self-mirror", iso=iso.to_json(), samples=1)
    elif name == "h11":
        rep = None
        bad = 0
        for _ in range(args.samples):
            rep = h11_obstruction(*sample_admissible_h11(rng))
            if rep.verdict != "Contradiction":
                bad += 1
        payload.update(verdict="obstructed" if bad == 0 else "inconclusive",
                       obstruction=rep.to_json(), samples=args.samples)
    elif name == "h17":
        absent = not any("h17" in r.g_set for r in TABF1_ROWS)
        payload.update(
            verdict="no complex structure" if absent else "unexpected",
            samples=0)
    else:
        row = _excluded_row(name, rng, args.samples)
        payload.update(verdict=row["verdict"] if row["ok"] else "inconclusive",
                       samples=row["samples"], detail=row["detail"])
    ok = payload["verdict"] == expected
    payload["ok"] = ok
    return (0 if ok else 2), payload, lambda p: (
        f"{p['name']}: {p['verdict']}" + ("" if p["ok"] else "  [MISMATCH]"))


def _row_text(rows, ok):
    lines = []
    for r in rows:
        mark = "ok" if r["ok"] else "FAIL"
        head = r.get("name") or f"row {r['index']}"
        lines.append(f"{head:<8} {mark:<5} {r['passed']}/{r['samples']}")
    lines.append("all rows pass" if ok else "TABLE VERIFICATION FAILED")
    return "\n".join(lines)


def _cmd_verify_table1(args):
    rng = random.Random(args.seed)
    rows = []
    for row in TABLE1_ROWS:
        passed = 0
        for k in range(args.samples):
            eq = sample_table1_row(row, rng, k)
            good = (matches_table1_row(eq, row)
                    and identify_underlying(eq) == row.name
                    and classify(realify(eq)) == row.name)
            passed += bool(good)
        rows.append({
            "name": row.name,
            "samples": args.samples,
            "passed": passed,
            "ok": passed == args.samples,
        })
    ok = all(r["ok"] for r in rows)
    payload = {"seed": args.seed, "samples": args.samples,
               "rows": rows, "ok": ok}
    return (0 if ok else 2), payload, lambda p: _row_text(p["rows"], p["ok"])


def _cmd_verify_tablef1(args):
    rng = random.Random(args.seed)
    rows = []
    for idx, row in enumerate(TABF1_ROWS):
        passed = 0
        for k in range(args.samples):
            eq = sample_tabf1_row(idx, rng, k)
            good = (matches_tabf1_row(eq, row)
                    and classify_f1(eq) == row.f1
                    and identify_underlying(eq) in row.g_set)
            passed += bool(good)
        rows.append({
            "index": idx + 1,
            "f1": row.f1,
            "samples": args.samples,
            "passed": passed,
            "ok": passed == args.samples,
        })
    agg = {}
    for row in TABF1_ROWS:
        for g in row.g_set:
            agg.setdefault(g, set()).add(row.f1)
    agg_ok = all(agg.get(g, set()) == set(GF1_CHECKMARKS[g])
                 for g in GF1_CHECKMARKS) and set(agg) == set(GF1_CHECKMARKS)
    ok = agg_ok and all(r["ok"] for r in rows)
    payload = {"seed": args.seed, "samples": args.samples, "rows": rows,
               "aggregation_ok": agg_ok, "ok": ok}
    return (0 if ok else 2), payload, lambda p: _row_text(p["rows"], p["ok"])


def _cmd_verify_main(args):
    rep = verify_theorem_main(seed=args.seed, samples=args.samples,
                              h11_samples=args.samples)

    def text(p):
        lines = []
        for r in p["rows"]:
            mark = "ok" if r["ok"] else "FAIL"
            lines.append(f"{r['name']:<4} {r['verdict']:<22} {mark:<5} "
                         f"n={r['samples']} {r['method']}")
        lines.append("verified" if p["ok"] else "VERIFICATION FAILED")
        return "\n".join(lines)

    return (0 if rep["ok"] else 2), rep, text


_VERBS = {
    "parse": (_cmd_parse, True),
    "classify": (_cmd_classify, True),
    "invariants": (_cmd_invariants, True),
    "f1": (_cmd_f1, True),
    "symplectic": (_cmd_symplectic, True),
    "mirror-check": (_cmd_mirror_check, True),
    "verify-table1": (_cmd_verify_table1, False),
    "verify-tablef1": (_cmd_verify_tablef1, False),
    "verify-main": (_cmd_verify_main, False),
}


class _Parser(argparse.ArgumentParser):
    """Usage problems are input errors: exit 1, not argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


def _build_parser():
    top = _Parser(prog="nildga", description=__doc__)
    sub = top.add_subparsers(dest="verb", metavar="verb")
    for verb, (handler, takes_input) in _VERBS.items():
        p = sub.add_parser(verb, add_help=True)
        if takes_input:
            p.add_argument("input", nargs="?",
                           help="name, structure equations, or JSON "
                                "(default: standard input)")
        p.add_argument("--format", choices=("json", "text"), default="json")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=20)
        p.add_argument("--tol", type=float, default=1e-9)
        p.set_defaults(handler=handler)
    return top


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    if args.verb is None:
        sys.stderr.write("error: no verb given (try --help)\n")
        return 1
    if args.seed is None:
        args.seed = 0
        sys.stderr.write("seed not given, using default seed 0\n")
    try:
        code, payload, text_fn = args.handler(args)
    except (InputError, ParseError) as bad:
        sys.stderr.write(f"error: {bad}\n")
        return 1
    _emit(payload, args.format, text_fn)
    return code


if __name__ == "__main__":
    sys.exit(main())
