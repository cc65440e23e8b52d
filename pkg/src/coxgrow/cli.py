"""``coxgrow`` command line.

Exit codes: 0 success, 1 input error, 2 validation or identity failure,
3 certification failure or sampler exhaustion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .coxeter import (
    CoxeterMatrixError,
    exponents,
    group_order,
    parse_coxeter_matrix,
    parse_label,
    solomon_series,
    steinberg_growth,
)
from .hfamily import (
    FamilyError,
    HFamily,
    SamplerExhausted,
    closed_form_text,
    detect_family,
    difference_identity,
    extract_h,
    h_closed_form,
    nonnegativity_check,
    sample_admissible_counts,
)
from .oracle import ElementCapExceeded, UnsupportedModelError, bfs_growth, build_model
from .polyarith import NotDivisibleError, RationalFunction, format_poly, parse_poly, taylor_coefficients
from .polyhedron import (
    CountVector,
    PolyhedronError,
    VertexTypeError,
    check_lemma2,
    count_vector,
    parse_polyhedron,
    to_coxeter_matrix,
)
from .roots import PerronStatus, growth_rate, perron_check, smallest_modulus_root, sturm_isolate

EXIT_OK, EXIT_INPUT, EXIT_INVALID, EXIT_UNCERTIFIED = 0, 1, 2, 3


class InputError(Exception):
    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


def _skipped(reason: str) -> dict:
    return {"skipped": reason}


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


def _read(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise InputError("input", f"cannot read {path}: {exc.strerror}") from None


def _growth_json(g: RationalFunction) -> dict:
    return {"numerator": format_poly(g.num), "denominator": format_poly(g.den)}


def _rate_json(g: RationalFunction, precision: int) -> dict:
    return growth_rate(g, precision).to_json()


# --- growth -------------------------------------------------------------------------

def growth_report(data: bytes, matrix: bool, series: int, precision: int, noncompact: bool | None) -> tuple[dict, int]:
    report: dict = {"input_digest": _digest(data), "precision": precision}
    code = EXIT_OK
    if matrix:
        try:
            m = parse_coxeter_matrix(data.decode("utf-8"))
        except (CoxeterMatrixError, UnicodeDecodeError) as exc:
            raise InputError("matrix", str(exc)) from None
        g = steinberg_growth(m)
        for key in ("counts", "lemma2", "family", "h", "nonnegativity"):
            report[key] = _skipped("Coxeter matrix input has no polyhedral counts")
    else:
        try:
            scheme = parse_polyhedron(data.decode("utf-8"))
        except (PolyhedronError, UnicodeDecodeError) as exc:
            raise InputError("polyhedron", str(exc)) from None
        try:
            counts = count_vector(scheme)
        except VertexTypeError as exc:
            report["validation"] = {"passed": False, "error": f"vertex condition violated: {exc}"}
            return report, EXIT_INVALID
        nc = _noncompact(scheme, noncompact)
        lemma = check_lemma2(counts, noncompact=nc)
        report["counts"] = counts.to_json()
        report["lemma2"] = lemma.to_json()
        if not lemma.passed:
            code = EXIT_INVALID
        g = steinberg_growth(to_coxeter_matrix(scheme))
        _family_section(report, g, counts, nc)
    report["growth_function"] = _growth_json(g)
    report["series"] = taylor_coefficients(g, series)
    report["growth_rate"] = _rate_json(g, precision)
    verdict = perron_check(g, precision)
    report["perron"] = verdict.to_json()
    if verdict.status is PerronStatus.NOT_CERTIFIED and code == EXIT_OK:
        code = EXIT_UNCERTIFIED
    return report, code


def _noncompact(scheme, flag: bool | None) -> bool:
    if flag:
        return True
    return scheme.noncompact is not False


def _family_section(report: dict, g: RationalFunction, counts: CountVector, noncompact: bool) -> None:
    try:
        fam = detect_family(counts)
    except FamilyError as exc:
        for key in ("family", "h", "nonnegativity"):
            report[key] = _skipped(str(exc))
        return
    report["family"] = fam.tag
    try:
        report["h"] = format_poly(extract_h(g, fam))
    except NotDivisibleError:
        report["h"] = _skipped(f"growth function does not factor over the {fam.tag} base")
    if noncompact:
        report["nonnegativity"] = nonnegativity_check(fam, counts).to_json()
    else:
        report["nonnegativity"] = _skipped("compact polyhedron")


# --- check ----------------------------------------------------------------------------

def check_report(data: bytes, noncompact: bool | None) -> tuple[dict, int]:
    try:
        scheme = parse_polyhedron(data.decode("utf-8"))
    except (PolyhedronError, UnicodeDecodeError) as exc:
        raise InputError("polyhedron", str(exc)) from None
    report: dict = {"input_digest": _digest(data)}
    try:
        counts = count_vector(scheme)
    except VertexTypeError as exc:
        report["vertex_condition"] = {"passed": False, "error": str(exc)}
        return report, EXIT_INVALID
    report["vertex_condition"] = {"passed": True}
    lemma = check_lemma2(counts, noncompact=_noncompact(scheme, noncompact))
    report["counts"] = counts.to_json()
    report["lemma2"] = lemma.to_json()
    return report, EXIT_OK if lemma.passed else EXIT_INVALID


# --- h-verify -------------------------------------------------------------------------

def hverify_report(data: bytes) -> tuple[dict, int]:
    try:
        scheme = parse_polyhedron(data.decode("utf-8"))
    except (PolyhedronError, UnicodeDecodeError) as exc:
        raise InputError("polyhedron", str(exc)) from None
    report: dict = {"input_digest": _digest(data)}
    try:
        counts = count_vector(scheme)
        fam = detect_family(counts)
    except (VertexTypeError, FamilyError) as exc:
        report["error"] = str(exc)
        return report, EXIT_INVALID
    g = steinberg_growth(to_coxeter_matrix(scheme))
    report["family"] = fam.tag
    try:
        h = extract_h(g, fam)
    except NotDivisibleError:
        report["error"] = f"growth function does not factor over the {fam.tag} base"
        return report, EXIT_INVALID
    report["h_from_growth"] = format_poly(h)
    if fam is HFamily.H23456:
        report["difference"] = difference_identity(counts).to_json()
        return report, EXIT_OK
    closed = h_closed_form(fam, counts)
    forms = closed_form_text(fam)
    rows = []
    for k in range(len(forms) - 1, -1, -1):
        rows.append({
            "index": k,
            "closed_form": forms[len(forms) - 1 - k],
            "closed_value": closed[k],
            "from_growth": h[k],
            "equal": closed[k] == h[k],
        })
    equal = closed == h
    report["h_closed_form"] = format_poly(closed)
    report["coefficients"] = rows
    report["equal"] = equal
    return report, EXIT_OK if equal else EXIT_INVALID


# --- sample -----------------------------------------------------------------------------

def sample_report(family: str, seed: int, n: int) -> tuple[dict, int]:
    try:
        fam = HFamily.from_tag(family)
    except FamilyError as exc:
        raise InputError("family", str(exc)) from None
    if n < 1:
        raise InputError("n", "must be >= 1")
    report: dict = {"family": fam.tag, "seed": seed, "n": n}
    try:
        samples = sample_admissible_counts(fam, seed, n)
    except SamplerExhausted as exc:
        report["error"] = str(exc)
        return report, EXIT_UNCERTIFIED
    results = [nonnegativity_check(fam, c) for c in samples]
    passed = sum(r.passed for r in results)
    report["vectors"] = [c.to_json() for c in samples]
    report["summary"] = {"passed": passed, "failed": n - passed}
    report["failures"] = [r.to_json() for r in results if not r.passed]
    return report, EXIT_OK if passed == n else EXIT_INVALID


# --- polynomial commands -------------------------------------------------------------------

def _poly(text: str):
    try:
        return parse_poly(text)
    except ValueError as exc:
        raise InputError("poly", str(exc)) from None


def roots_report(text: str, precision: int) -> tuple[dict, int]:
    p = _poly(text)
    if p.degree < 1:
        raise InputError("poly", "need degree >= 1")
    report: dict = {"input_digest": _digest(text.encode()), "poly": format_poly(p), "precision": precision}
    report["real_roots"] = [e.to_json() for e in sturm_isolate(p)]
    if p[0] == 0:
        report["smallest_modulus_root"] = _skipped("p(0) = 0; divide out t first")
        return report, EXIT_OK
    res = smallest_modulus_root(p, precision)
    report["smallest_modulus_root"] = res.to_json()
    return report, EXIT_OK if res.certified else EXIT_UNCERTIFIED


def perron_report(text: str, precision: int) -> tuple[dict, int]:
    p = _poly(text)
    if p.is_zero:
        raise InputError("poly", "zero polynomial")
    if p[0] == 0:
        raise InputError("poly", "denominator vanishes at t = 0")
    verdict = perron_check(p, precision)
    report = {"input_digest": _digest(text.encode()), "denominator": format_poly(p), "verdict": verdict.to_json()}
    return report, EXIT_UNCERTIFIED if verdict.status is PerronStatus.NOT_CERTIFIED else EXIT_OK


def _label(text: str):
    try:
        return parse_label(text)
    except ValueError as exc:
        raise InputError("type", str(exc)) from None


def solomon_report(label_text: str) -> tuple[dict, int]:
    label = _label(label_text)
    f = solomon_series([label])
    return {
        "type": str(label),
        "exponents": list(exponents(label)),
        "growth_polynomial": format_poly(f),
        "coefficients": list(f.coeffs),
        "order": group_order(label),
    }, EXIT_OK


def oracle_report(label_text: str) -> tuple[dict, int]:
    label = _label(label_text)
    try:
        model = build_model(label)
        f = bfs_growth(model)
    except (UnsupportedModelError, ElementCapExceeded) as exc:
        raise InputError("type", str(exc)) from None
    sol = solomon_series([label])
    return {
        "type": str(label),
        "bfs_coefficients": list(f.coeffs),
        "order": f(1),
        "solomon_coefficients": list(sol.coeffs),
        "agrees": f == sol,
    }, EXIT_OK if f == sol else EXIT_INVALID


# --- rendering ----------------------------------------------------------------------------

def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_text(report, indent: int = 0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(report, dict):
        for key in sorted(report):
            val = report[key]
            if isinstance(val, (dict, list)) and val and not _is_flat_list(val):
                lines.append(f"{pad}{key}:")
                lines.append(render_text(val, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}{key}: {_scalar(val)}")
    elif isinstance(report, list):
        for item in report:
            if isinstance(item, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(render_text(item, indent + 1).rstrip("\n"))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(report)}")
    return "\n".join(lines) + "\n"


def _is_flat_list(val) -> bool:
    return isinstance(val, list) and all(not isinstance(x, (dict, list)) for x in val)


def _scalar(val) -> str:
    if isinstance(val, list):
        return ", ".join(_scalar(x) for x in val) if val else "[]"
    if isinstance(val, dict):
        return "{}"
    if val is None:
        return "-"
    if isinstance(val, bool):
        return "yes" if val else "no"
    return str(val)


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    out.write(render_json(report) if fmt == "json" else render_text(report))


# --- batch -----------------------------------------------------------------------------------

def _batch_one(args: tuple[str, bool, int, int, bool | None, str]) -> tuple[str, int]:
    path, matrix, series, precision, noncompact, fmt = args
    try:
        report, code = growth_report(_read(path), matrix, series, precision, noncompact)
    except InputError as exc:
        report, code = {"error": {"field": exc.field, "message": exc.message}}, EXIT_INPUT
    report["exit_code"] = code
    suffix = ".report.json" if fmt == "json" else ".report.txt"
    target = Path(path).with_suffix(suffix)
    target.write_text(render_json(report) if fmt == "json" else render_text(report), encoding="utf-8")
    return str(target), code


def run_batch(directory: str, matrix: bool, series: int, precision: int, noncompact: bool | None, fmt: str) -> int:
    root = Path(directory)
    if not root.is_dir():
        raise InputError("input-dir", f"{directory} is not a directory")
    paths = sorted(str(p) for p in root.glob("*.json") if not p.name.endswith(".report.json"))
    jobs = [(p, matrix, series, precision, noncompact, fmt) for p in paths]
    with ProcessPoolExecutor() as pool:
        results = list(pool.map(_batch_one, jobs))
    summary = {"files": [{"report": t, "exit_code": c} for t, c in results]}
    _emit(summary, fmt)
    return max((c for _, c in results), default=EXIT_OK)


# --- argument parsing ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--precision", type=int, default=128, metavar="BITS")

    parser = argparse.ArgumentParser(prog="coxgrow", description="Growth functions and growth rates of Coxeter groups.")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("growth", parents=[common], help="full report for a polyhedron or Coxeter matrix")
    g.add_argument("input", nargs="?")
    g.add_argument("--input-dir", help="process every *.json in a directory, writing reports next to them")
    g.add_argument("--matrix", action="store_true", help="input is a Coxeter matrix document")
    g.add_argument("--series", type=int, default=20, metavar="N")
    g.add_argument("--noncompact", action="store_true", default=None)

    c = sub.add_parser("check", parents=[common], help="polyhedral count identities")
    c.add_argument("input")
    c.add_argument("--noncompact", action="store_true", default=None)

    h = sub.add_parser("h-verify", parents=[common], help="H-polynomial against its closed form")
    h.add_argument("input")

    s = sub.add_parser("sample", parents=[common], help="sample admissible count vectors and replay the sign checks")
    s.add_argument("--family", required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--n", type=int, default=100)
    s.add_argument("--out", help="write the report here instead of stdout")

    r = sub.add_parser("roots", parents=[common], help="real roots and the smallest-modulus root")
    r.add_argument("--poly", required=True)

    p = sub.add_parser("perron", parents=[common], help="Perron verdict for a growth denominator")
    p.add_argument("--poly", required=True)

    so = sub.add_parser("solomon", parents=[common], help="growth polynomial of a finite type")
    so.add_argument("--type", required=True, dest="type_label")

    o = sub.add_parser("oracle", parents=[common], help="breadth-first word counts in a concrete model")
    o.add_argument("--type", required=True, dest="type_label")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = args.format
    try:
        if args.precision < 8:
            raise InputError("precision", "need at least 8 bits")
        cmd = args.command
        if cmd == "growth":
            if args.input_dir:
                return run_batch(args.input_dir, args.matrix, args.series, args.precision, args.noncompact, fmt)
            if not args.input:
                raise InputError("input", "give an input file or --input-dir")
            if args.series < 1:
                raise InputError("series", "must be >= 1")
            report, code = growth_report(_read(args.input), args.matrix, args.series, args.precision, args.noncompact)
        elif cmd == "check":
            report, code = check_report(_read(args.input), args.noncompact)
        elif cmd == "h-verify":
            report, code = hverify_report(_read(args.input))
        elif cmd == "sample":
            report, code = sample_report(args.family, args.seed, args.n)
            if args.out:
                Path(args.out).write_text(render_json(report) if fmt == "json" else render_text(report), encoding="utf-8")
                report = {"out": args.out, "summary": report.get("summary"), "error": report.get("error")}
        elif cmd == "roots":
            report, code = roots_report(args.poly, args.precision)
        elif cmd == "perron":
            report, code = perron_report(args.poly, args.precision)
        elif cmd == "solomon":
            report, code = solomon_report(args.type_label)
        else:
            report, code = oracle_report(args.type_label)
    except InputError as exc:
        _emit({"error": {"field": exc.field, "message": exc.message}}, fmt, sys.stderr if fmt == "text" else sys.stdout)
        return EXIT_INPUT
    _emit(report, fmt)
    return code


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
