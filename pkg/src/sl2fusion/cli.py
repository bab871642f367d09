"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad usage.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Callable, Iterable, Sequence

from . import affine_char, basis_enum, decomposer, fermion_oracle, fusion_char, verlinde
from .compositions import (Composition, avectors_up_to, dvector_of, parse_avector)
from .errors import InvariantViolation, UsageError
from .qseries import BiSeries, format_monomial, format_series


class VerificationFailed(Exception):
    def __init__(self, payload: Any):
        super().__init__("verification failed")
        self.payload = payload


# ---------------------------------------------------------------------------
# argument helpers

def _composition(text: str) -> Composition:
    return Composition.of(text)


def _ints(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _qmax4(args) -> int:
    if args.qmax is not None and args.qmax4 is not None:
        raise UsageError("give --qmax4 or --qmax, not both")
    if args.qmax is not None:
        value = 4 * args.qmax
    elif args.qmax4 is not None:
        value = args.qmax4
    else:
        value = args.default_qmax4
    if value < 0:
        raise UsageError("truncation bound must be nonnegative")
    return value


def _add_qmax(p: argparse.ArgumentParser, default: int = 40) -> None:
    p.add_argument("--qmax4", type=int, default=None,
                   help=f"truncation bound in quarter q-units (default {default})")
    p.add_argument("--qmax", type=int, default=None,
                   help="truncation bound in whole q-degrees (x4 internally)")
    p.set_defaults(default_qmax4=default)


def _ld_input(args) -> Composition:
    D = _composition(args.d)
    if args.k is not None and args.k != D.k:
        raise UsageError(f"--k {args.k} disagrees with D of length {len(D)}")
    return D


def _a_or_d(args) -> Composition:
    if (args.a is None) == (args.d is None):
        raise UsageError("give exactly one of --a and --d")
    if args.a is not None:
        return dvector_of(parse_avector(args.a)).stripped()
    return _composition(args.d)


# ---------------------------------------------------------------------------
# commands

def cmd_char(args) -> Any:
    q = _qmax4(args)
    kind = args.kind
    if kind == "fusion":
        if args.a is None:
            raise UsageError("char fusion needs --a")
        return fusion_char.fusion_character(parse_avector(args.a), q)
    if kind == "minf":
        return fusion_char.m_character(_a_or_d(args), q)
    if kind == "winf":
        return fusion_char.w_infinity_character(_a_or_d(args), q)
    if kind == "ld":
        return affine_char.ld_character(_a_or_d(args), q)
    if kind == "irrep":
        if args.j is None or args.k is None:
            raise UsageError("char irrep needs --j and --k")
        return affine_char.irrep_character(affine_char.HighestWeightLabel(args.j, args.k), q)
    raise UsageError(f"unknown character kind {kind!r}")


def _multiplicity_json(j: int, mult: decomposer.GradedMultiplicity) -> dict:
    return {"j": j, "poly": str(mult),
            "terms": [{"q4": e, "c": str(c)} for e, c in mult.terms]}


def cmd_decompose(args) -> Any:
    D = _composition(args.d)
    K = decomposer.decompose_full(D)
    out: dict[str, Any] = {
        "K": [_multiplicity_json(j, m) for j, m in enumerate(K) if m],
        "verlinde": list(verlinde.verlinde_coefficients(D)),
        "verified": None,
    }
    if args.verify:
        q = _qmax4(args)
        problems = []
        if not decomposer.kostka_verlinde_check(D):
            problems.append("K_j(1) differs from the Verlinde coefficients")
        if decomposer.reconstruct_character(K, D.k, q) != affine_char.ld_character(D, q):
            problems.append("sum_j K_j ch L_{j,k} differs from ch L^D")
        out["verified"] = not problems
        if problems:
            out["problems"] = problems
            raise VerificationFailed(out)
    return out


def cmd_verlinde(args) -> Any:
    return list(verlinde.verlinde_coefficients(_composition(args.d)))


def cmd_basis(args) -> Any:
    D = _composition(args.d)
    q = _qmax4(args)
    if args.s is None:
        counts = basis_enum.counts_as_series(basis_enum.enumerate_winf_basis(D, q, args.bound), q)
        target = fusion_char.w_infinity_character(D, q)
    else:
        counts = basis_enum.counts_as_series(
            basis_enum.enumerate_ld_basis(D, args.s, q, args.bound), q)
        target = affine_char.ld_character(D.stripped(), q)
    diff = counts.first_difference(target)
    return {"counts": counts.to_json_obj(), "matches_character": diff is None,
            "first_difference": None if diff is None else
            {"q4": diff[0][0], "z2": diff[0][1], "basis": str(diff[1]), "character": str(diff[2])}}


def cmd_oracle(args) -> Any:
    what = args.what
    if what == "dim":
        return fermion_oracle.span_dimension(parse_avector(_need(args.a, "--a")))
    if what == "gradedchar":
        return fermion_oracle.graded_span_character(parse_avector(_need(args.a, "--a")), _qmax4(args))
    if what == "annihilate":
        a = parse_avector(_need(args.a, "--a"))
        i_max = args.imax if args.imax is not None else max(a) + 1
        bad = fermion_oracle.ideal_annihilation_failures(a, i_max)
        out = {"a": list(a), "imax": i_max, "ok": not bad,
               "failures": [{"i": i, "z_power": c} for i, c in bad]}
        if bad:
            raise VerificationFailed(out)
        return out
    if what == "embed":
        D = _ld_input(argparse.Namespace(d=_need(args.d, "--d"), k=args.k))
        const = fermion_oracle.embedding_constant(D)
        out = {"d": list(D.d), "ok": const is not None,
               "constant": None if const is None else str(const)}
        if const is None:
            raise VerificationFailed(out)
        return out
    if what == "extremal":
        b = _ints(_need(args.b, "--b"))
        q = _qmax4(args)
        got = fermion_oracle.extremal_module_character(b, q)
        D = fermion_oracle.extremal_composition(b)
        want = fusion_char.m_character(D, q)
        out = {"b": list(b), "d": list(D.d), "ok": got == want, "character": got.to_json_obj()}
        if got != want:
            raise VerificationFailed(out)
        return out
    raise UsageError(f"unknown oracle command {what!r}")


def _need(value, flag: str):
    if value is None:
        raise UsageError(f"missing {flag}")
    return value


# verification suites; each yields (case label, failure detail or None)

def _suite_recursions(args) -> Iterable[tuple[str, str | None]]:
    q = _qmax4(args)
    for D in decomposer.admissible_family(args.k, args.max_factors):
        if D.nontrivial_count() >= 2:
            yield f"step {D}", decomposer.decfun_identity_report(D, q)
        K = decomposer.decompose_full(D)
        ok = decomposer.reconstruct_character(K, D.k, q) == affine_char.ld_character(D, q)
        yield f"reconstruct {D}", None if ok else "sum_j K_j ch L_{j,k} != ch L^D"
        ok = decomposer.kostka_verlinde_check(D)
        yield f"verlinde {D}", None if ok else "K_j(1) != c_{j+1}"
    for D in decomposer.admissible_family(args.k, max(args.max_factors - 1, 0)):
        for s in range(2, D.k + 1):
            yield f"pair {D} s={s}", decomposer.decch_identity_report(D, s, q)


def _suite_oracle(args) -> Iterable[tuple[str, str | None]]:
    q = _qmax4(args)
    for a in avectors_up_to(args.max_dim):
        span, _, D = fermion_oracle.m_span(a)
        got, want = span.character(q), fusion_char.m_character(D, q)
        diff = got.first_difference(want)
        detail = None
        if diff is not None:
            detail = f"at {format_monomial(*diff[0])}: oracle {diff[1]}, formula {diff[2]}"
        elif span.dimension() != fusion_char.fusion_dimension(a):
            detail = f"span dimension {span.dimension()} != {fusion_char.fusion_dimension(a)}"
        yield f"A={a}", detail


def _suite_basis(args) -> Iterable[tuple[str, str | None]]:
    q = _qmax4(args)
    for D in decomposer.admissible_family(args.k, args.max_factors):
        diff = basis_enum.winf_basis_mismatch(D, q, args.bound)
        yield f"winf {D}", None if diff is None else f"first difference {diff}"


def _suite_verlinde(args) -> Iterable[tuple[str, str | None]]:
    for m in range(1, args.max_level + 1):
        bad = verlinde.verprop_failures(m)
        yield f"V_{m}", "; ".join(bad) if bad else None


def _suite_stabilize(args) -> Iterable[tuple[str, str | None]]:
    q = _qmax4(args)
    for D in decomposer.admissible_family(args.k, args.max_factors):
        try:
            s = affine_char.stabilization_check(D, q)
            yield f"{D} (s_min={s})", None
        except InvariantViolation as exc:
            yield f"{D}", str(exc)


SUITES: dict[str, Callable] = {
    "recursions": _suite_recursions,
    "oracle": _suite_oracle,
    "basis": _suite_basis,
    "verlinde": _suite_verlinde,
    "stabilize": _suite_stabilize,
}


def cmd_verify(args) -> Any:
    cases = [{"case": label, "ok": detail is None, "detail": detail}
             for label, detail in SUITES[args.suite](args)]
    out = {"suite": args.suite, "ok": all(c["ok"] for c in cases), "cases": cases}
    if not out["ok"]:
        raise VerificationFailed(out)
    return out


# ---------------------------------------------------------------------------
# parser and output

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sl2fusion", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    parser.add_argument("--output", default=None, help="write to this file instead of stdout")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("char", help="characters as truncated series")
    p.add_argument("kind", choices=("fusion", "minf", "winf", "ld", "irrep"))
    p.add_argument("--a")
    p.add_argument("--d")
    p.add_argument("--j", type=int)
    p.add_argument("--k", type=int)
    _add_qmax(p, 40)
    p.set_defaults(func=cmd_char)

    p = sub.add_parser("decompose", help="graded multiplicities of L_{j,k} in L^D")
    p.add_argument("--d", required=True)
    p.add_argument("--verify", action="store_true")
    _add_qmax(p, 80)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("verlinde", help="coefficients of pi_D in the Verlinde algebra")
    p.add_argument("--d", required=True)
    p.set_defaults(func=cmd_verlinde)

    p = sub.add_parser("basis", help="monomial basis counts")
    p.add_argument("what", choices=("count",))
    p.add_argument("--d", required=True)
    p.add_argument("--s", type=int, default=None,
                   help="count the basis of the s-th approximation of L^D instead of W^{A_inf}")
    p.add_argument("--bound", choices=basis_enum.BOUNDS, default="exact")
    _add_qmax(p, 40)
    p.set_defaults(func=cmd_basis)

    p = sub.add_parser("oracle", help="fermionic Fock-space computations")
    p.add_argument("what", choices=("dim", "gradedchar", "annihilate", "embed", "extremal"))
    p.add_argument("--a")
    p.add_argument("--d")
    p.add_argument("--k", type=int)
    p.add_argument("--b")
    p.add_argument("--imax", type=int)
    _add_qmax(p, 40)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=sorted(SUITES))
    p.add_argument("--k", type=int, default=2, help="largest level in the D family")
    p.add_argument("--max-factors", type=int, default=4,
                   help="largest d_2 + ... + d_(k+1) in the D family")
    p.add_argument("--max-dim", type=int, default=36, help="largest prod a_i for the oracle suite")
    p.add_argument("--max-level", type=int, default=8, help="largest m for the Verlinde suite")
    p.add_argument("--bound", choices=basis_enum.BOUNDS, default="exact")
    _add_qmax(p, 40)
    p.set_defaults(func=cmd_verify)
    return parser


def _to_jsonable(value: Any) -> Any:
    if isinstance(value, BiSeries):
        return value.to_json_obj()
    return value


def _render(value: Any, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(_to_jsonable(value), sort_keys=True, separators=(",", ":"))
    if isinstance(value, BiSeries):
        return format_series(value)
    if isinstance(value, dict) and "cases" in value:
        lines = [f"{'PASS' if c['ok'] else 'FAIL'} {c['case']}"
                 + ("" if c["ok"] else f": {c['detail']}") for c in value["cases"]]
        lines.append(f"{value['suite']}: {'ok' if value['ok'] else 'FAILED'}")
        return "\n".join(lines)
    if isinstance(value, dict) and "K" in value:
        lines = [f"K_{item['j']} = {item['poly']}" for item in value["K"]]
        lines.append("verlinde: " + " ".join(map(str, value["verlinde"])))
        if value["verified"] is not None:
            lines.append(f"verified: {value['verified']}")
        return "\n".join(lines)
    return json.dumps(_to_jsonable(value), sort_keys=True, indent=2)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text + "\n")
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except VerificationFailed as exc:
        _emit(_render(exc.payload, args.format), args.output)
        return 1
    except UsageError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except InvariantViolation as exc:
        sys.stderr.write(f"invariant violated: {exc}\n")
        return 1
    _emit(_render(result, args.format), args.output)
    return 0


def main() -> None:
    sys.exit(run())
