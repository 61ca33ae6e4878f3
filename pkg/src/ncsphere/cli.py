"""Command-line front end: ``ncsphere relations|verify|report``.

Exit codes: 0 all selected checks pass, 1 some check failed, 2 some check
ran out of budget (and none failed), 3 usage, parse or I/O error.

Reports are deterministic: checks appear in a fixed order, scalars and
elements are rendered canonically and timings are only included with
``--timings``.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .budget import Budget, BudgetExceeded
from .chern import (
    clifford_checks,
    ch1,
    cond_expression,
    fuzzy_casimir,
    generic_unitary,
    substitute_star,
    two_sphere_rigidity,
)
from .exact import GaussRat, parse_gauss, unit_circle_from_pythagorean
from .freealg import Z_ALPHABET, FreeElt, parse_free
from .linalg import SparseEchelon, row_space_equal
from .rewrite import ResourceLimit, commutative_dims, complete, is_central, normal_word_counts, oracle_dimension
from .serialize import scalar_to_json
from .sphere import (
    PRESETS,
    ModuliParams,
    SpecialCaseError,
    casimir,
    central_elements_z,
    classify_case,
    comm_anticomm_form,
    normalize_moduli,
    relation_sextet,
    relation_span_dim,
    rescale_relation,
    rescale_sklyanin,
    skly_relations,
)

SCHEMA_VERSION = "1.0"

CHECK_IDS = ("central", "hilbert", "charvariety", "sigma", "curveid", "centralform", "chern", "classify")

ANCHORS = {
    "central": "central elements C and Q_k",
    "hilbert": "Hilbert series of the quadratic algebra",
    "charvariety": "relation matrix minors and the curve q1 = q2 = 0",
    "sigma": "special points, sigma and the reality map",
    "curveid": "parameter curve versus characteristic curve",
    "centralform": "central quadratic form identity",
    "chern": "first Chern character of U",
    "classify": "degenerate parameter taxonomy",
}

STATUSES = ("pass", "fail", "skipped(budget)", "not-applicable")

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ncsphere report",
    "type": "object",
    "required": ["schema_version", "tool", "version", "command", "config", "lambda",
                 "normalized_lambda", "case", "checks", "summary"],
    "additionalProperties": False,
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "tool": {"const": "ncsphere"},
        "version": {"type": "string"},
        "command": {"enum": ["relations", "verify", "report"]},
        "config": {
            "type": "object",
            "required": ["source", "degree", "checks"],
            "properties": {
                "source": {"type": "string"},
                "degree": {"type": "integer", "minimum": 2},
                "checks": {"type": "array", "items": {"enum": list(CHECK_IDS)}},
                "budget_ms": {"type": ["integer", "null"]},
                "candidate": {"type": ["string", "null"]},
            },
        },
        "lambda": {"type": "array", "minItems": 4, "maxItems": 4},
        "normalized_lambda": {"type": ["array", "null"]},
        "case": {"type": ["object", "null"]},
        "presentation": {"type": "object"},
        "checks": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["id", "status", "anchor", "certificate"],
                "additionalProperties": False,
                "properties": {
                    "id": {"enum": list(CHECK_IDS)},
                    "status": {"enum": list(STATUSES)},
                    "anchor": {"type": "string"},
                    "certificate": {"type": "object"},
                    "timing_ms": {"type": "number"},
                },
            },
        },
        "summary": {
            "type": "object",
            "required": ["passed", "failed", "skipped", "not_applicable", "exit_code"],
            "properties": {
                "passed": {"type": "integer"},
                "failed": {"type": "integer"},
                "skipped": {"type": "integer"},
                "not_applicable": {"type": "integer"},
                "exit_code": {"enum": [0, 1, 2]},
            },
        },
    },
}

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# ----------------------------------------------------------------------
# configuration
# ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def parse_pythagorean(text):
    """``"1,0;2,1;3,2;4,1"`` -> four unit-circle points."""
    parts = [p for p in text.replace(" ", "").split(";") if p]
    if len(parts) != 4:
        raise ValueError(f"expected four p,q pairs separated by ';', got {len(parts)}")
    vals = []
    for pos, part in enumerate(parts):
        try:
            p, q = part.split(",")
            vals.append(unit_circle_from_pythagorean(int(p), int(q)))
        except ValueError as e:
            raise ValueError(f"pair {pos} ({part!r}): {e}") from None
    return ModuliParams(tuple(vals))


def _load_toml(path):
    import tomli

    try:
        with open(path, "rb") as fh:
            return tomli.load(fh)
    except OSError as e:
        raise UsageError(f"cannot read config {path}: {e.strerror}") from None
    except tomli.TOMLDecodeError as e:
        raise UsageError(f"{path}: {e}") from None


def resolve_config(ns):
    """Merge --config with the command line; return a plain dict."""
    file_cfg = _load_toml(ns.config) if getattr(ns, "config", None) else {}
    unknown = set(file_cfg) - {"lambda", "pythagorean", "preset", "degree", "checks",
                               "budget_ms", "workers", "out", "candidate"}
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    cli_sources = [(k, getattr(ns, k, None)) for k in ("lambda_", "pythagorean", "preset")]
    cli_sources = [(k.rstrip("_"), v) for k, v in cli_sources if v is not None]
    if getattr(ns, "symbolic", False):
        cli_sources.append(("symbolic", True))
    if len(cli_sources) > 1:
        raise UsageError("give exactly one of --lambda, --pythagorean, --preset"
                         + (", --symbolic" if hasattr(ns, "symbolic") else ""))
    if cli_sources:
        source = cli_sources[0]
    else:
        file_sources = [(k, file_cfg[k]) for k in ("lambda", "pythagorean", "preset") if k in file_cfg]
        if len(file_sources) != 1:
            raise UsageError("exactly one λ source is required (--lambda, --pythagorean or --preset)")
        source = file_sources[0]
    kind, value = source
    try:
        if kind == "lambda":
            params = ModuliParams.parse(value)
            label = "lambda:" + (value if isinstance(value, str) else json.dumps(value))
        elif kind == "pythagorean":
            params = parse_pythagorean(value)
            label = f"pythagorean:{value}"
        elif kind == "preset":
            if value not in PRESETS:
                raise ValueError(f"unknown preset {value!r}; choose from {', '.join(PRESETS)}")
            params = PRESETS[value]
            label = f"preset:{value}"
        else:
            params = ModuliParams.symbolic()
            label = "symbolic"
    except (ValueError, TypeError, json.JSONDecodeError) as e:
        raise UsageError(f"bad λ ({kind}): {e}") from None
    if not params.is_symbolic and not params.is_unit():
        bad = [i for i, x in enumerate(params.lam) if x.norm() != 1]
        raise UsageError(f"λ[{bad[0]}] = {params.lam[bad[0]]} is not on the unit circle")

    def pick(name, default):
        v = getattr(ns, name, None)
        return v if v is not None else file_cfg.get(name, default)

    degree = pick("degree", 4)
    if not isinstance(degree, int) or degree < 2:
        raise UsageError(f"degree bound must be an integer ≥ 2, got {degree!r}")
    checks = pick("checks", ",".join(CHECK_IDS))
    if isinstance(checks, str):
        checks = [c for c in checks.replace(" ", "").split(",") if c]
    bad = [c for c in checks if c not in CHECK_IDS]
    if bad:
        raise UsageError(f"unknown check {bad[0]!r}; choose from {', '.join(CHECK_IDS)}")
    checks = [c for c in CHECK_IDS if c in checks]  # canonical order, no duplicates
    candidate = pick("candidate", None)
    if candidate is not None:
        try:
            parse_free(candidate, Z_ALPHABET)
        except ValueError as e:
            raise UsageError(f"bad candidate: {e}") from None
    budget_ms = pick("budget_ms", None)
    workers = pick("workers", 1)
    if not isinstance(workers, int) or workers < 1:
        raise UsageError("workers must be a positive integer")
    return {
        "params": params,
        "source": label,
        "degree": degree,
        "checks": checks,
        "budget_ms": budget_ms,
        "workers": workers,
        "out": pick("out", None),
        "candidate": candidate,
    }


# ----------------------------------------------------------------------
# checks
# ----------------------------------------------------------------------

def _generic(params):
    try:
        rescale_sklyanin(params)
    except SpecialCaseError as e:
        return False, e.factor
    return classify_case(params).name == "generic", None


def _not_applicable(params, why=None):
    tag = classify_case(params)
    return "not-applicable", {"reason": why or f"needs generic λ, case is {tag.name}"}


def check_central(params, degree, budget, candidate=None):
    bound = max(degree, 3)
    rs = complete(relation_sextet(params), bound, budget=budget)
    elements = [("C", casimir(params))]
    cert = {"degree_bound": bound, "rules": len(rs.rules)}
    generic, _ = _generic(params)
    if generic:
        qs = central_elements_z(rescale_sklyanin(params))
        elements += [(f"Q{k}", q) for k, q in zip((1, 2, 3), qs)]
        cert["sum_Q_vanishes"] = (qs[0] + qs[1] + qs[2]).is_zero()
    else:
        cert["Q"] = "not-applicable"
    if candidate is not None:
        elements.append(("candidate", parse_free(candidate, Z_ALPHABET)))
    ok = cert.get("sum_Q_vanishes", True)
    results = {}
    for name, x in elements:
        flag, nfs = is_central(x, rs)
        entry = {"element": x.render(), "central": flag}
        offending = {g: nf.render() for g, nf in nfs.items() if not nf.is_zero()}
        if offending:
            entry["normal_forms"] = offending
        results[name] = entry
        ok = ok and flag
    cert["elements"] = results
    return ("pass" if ok else "fail"), cert


def _dims(relations, n_max, budget):
    rs = complete(relations, n_max, budget=budget)
    rewrite = normal_word_counts(rs, n_max)
    oracle = [oracle_dimension(relations, n, budget=budget) for n in range(n_max + 1)]
    return rewrite, oracle


def check_hilbert(params, degree, budget, candidate=None):
    sextet = relation_sextet(params)
    quad_rw, quad_or = _dims(sextet, degree, budget)
    c_max = min(degree, 4)
    withc_rw, withc_or = _dims(sextet + [casimir(params)], c_max, budget)
    expect_quad = commutative_dims(degree)
    expect_c = [(n + 1) ** 2 for n in range(c_max + 1)]
    agree = quad_rw == quad_or and withc_rw == withc_or
    match = quad_rw == expect_quad and withc_rw == expect_c
    case = classify_case(params).name
    growth = case in ("three-relations", "coarse")
    cert = {
        "quadratic": {"rewrite": quad_rw, "oracle": quad_or, "expected": expect_quad},
        "with_C": {"rewrite": withc_rw, "oracle": withc_or, "expected": expect_c},
        "methods_agree": agree,
        "matches_formula": match,
        "expected_growth": growth,
    }
    return ("pass" if agree and (match or growth) else "fail"), cert


def check_charvariety(params, degree, budget, candidate=None):
    from .geometry import block_minor_factors, minors_in_ideal, verify_det_1245

    ok_det, sign = verify_det_1245(params)
    minors = minors_in_ideal(params, budget=budget)
    blocks = block_minor_factors(params)
    failing = [m for m in minors["minors"] if not m["zero"]]
    cert = {
        "det_1245_matches": ok_det,
        "det_1245_sign": sign,
        "block_factors": blocks["ok"],
        "minors_in_ideal": minors["ok"],
        "minors_checked": len(minors["minors"]),
    }
    if failing:
        cert["failing_minors"] = failing
    return ("pass" if ok_det and minors["ok"] and blocks["ok"] else "fail"), cert


def check_sigma(params, degree, budget, candidate=None):
    from .geometry import reality_checks, scaled_checks, special_point_report

    generic, _ = _generic(params)
    if not generic:
        return _not_applicable(params)
    pts = special_point_report(params)
    pts_ok = all(p["in_E"] for p in pts) and all(
        p["sigma_fixed"] == p["label"].startswith("P") for p in pts)
    scaled = scaled_checks(params, budget=budget)
    real = reality_checks(params, budget=budget)
    cert = {
        "special_points": [{k: v for k, v in p.items() if isinstance(v, bool) or k == "label"}
                           for p in pts],
        "scaled": scaled,
        "reality": real,
    }
    return ("pass" if pts_ok and scaled["ok"] and real["ok"] else "fail"), cert


def check_curveid(params, degree, budget, candidate=None):
    from .geometry import curve_identification

    generic, _ = _generic(params)
    if not generic:
        return _not_applicable(params)
    rep = curve_identification(params)
    return ("pass" if rep["ok"] else "fail"), rep


def check_centralform(params, degree, budget, candidate=None):
    from .geometry import central_form_check

    generic, _ = _generic(params)
    if not generic:
        return _not_applicable(params)
    per_k = [central_form_check(params, k, budget=budget) for k in (1, 2, 3)]
    cert = {"forms": per_k}
    return ("pass" if all(r["ok"] for r in per_k) else "fail"), cert


def check_chern(params, degree, budget, candidate=None):
    U, Us = generic_unitary()
    c1 = ch1(U, Us).value
    cond = cond_expression()
    at_lam = substitute_star(c1, params.lam)
    sphere2 = two_sphere_rigidity()
    fuzzy = [fuzzy_casimir(n) for n in (2, 3)]
    cliff = [clifford_checks(d) for d in (1, 2, 3)]
    cert = {
        "ch1_equals_cond": c1 == cond,
        "ch1_vanishes_at_lambda": at_lam.is_zero(),
        "two_sphere_span": sphere2["same_span"],
        "fuzzy": [{k: v for k, v in f.items() if k != "sum"} for f in fuzzy],
        "clifford": cliff,
    }
    if not at_lam.is_zero():
        cert["ch1_at_lambda"] = at_lam.render()
    ok = (cert["ch1_equals_cond"] and cert["ch1_vanishes_at_lambda"] and cert["two_sphere_span"]
          and all(f["casimir_holds"] and f["su2_relations"] and f["hermitian"] for f in fuzzy)
          and all(c["anticommute"] and c["s_squared"] and c["unitary"] for c in cliff))
    return ("pass" if ok else "fail"), cert


_EXPECTED_SPAN = {"three-relations": 3, "coarse": 5}


def check_classify(params, degree, budget, candidate=None):
    from .geometry import classify_variety

    tag = classify_case(params)
    span = relation_span_dim(params)
    variety = classify_variety(params)
    expected = _EXPECTED_SPAN.get(tag.name, 6)
    norm, norm_tag = normalize_moduli(params)
    cert = {
        "case": tag.to_json(),
        "relation_span_dim": span,
        "expected_span_dim": expected,
        "variety": variety,
        "normalized_case": norm_tag.name,
    }
    ok = span == expected and variety["independent_rows"] == span and norm_tag.name == tag.name
    if tag.name == "three-relations":
        ok = ok and variety["rank_on_sum_sq_zero"] == [2]
    return ("pass" if ok else "fail"), cert


CHECKS = {
    "central": check_central,
    "hilbert": check_hilbert,
    "charvariety": check_charvariety,
    "sigma": check_sigma,
    "curveid": check_curveid,
    "centralform": check_centralform,
    "chern": check_chern,
    "classify": check_classify,
}


def run_check(check_id, lam_json, degree, budget_ms, candidate=None):
    """Run one check; arguments are plain data so this can run in a worker process."""
    params = ModuliParams.parse(lam_json)
    budget = Budget(max_ms=budget_ms) if budget_ms is not None else None
    t0 = time.monotonic()
    try:
        status, cert = CHECKS[check_id](params, degree, budget, candidate)
    except (BudgetExceeded, ResourceLimit) as e:
        status, cert = "skipped(budget)", {"reason": str(e)}
    ms = round((time.monotonic() - t0) * 1000, 1)
    return {"id": check_id, "status": status, "anchor": ANCHORS[check_id],
            "certificate": _jsonable(cert), "timing_ms": ms}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, GaussRat):
        return scalar_to_json(x)
    return str(x)


# ----------------------------------------------------------------------
# reports
# ----------------------------------------------------------------------

def echelon_basis(elts):
    """Reduced echelon basis of the span, as elements (canonical for the span)."""
    ech = SparseEchelon()
    for e in elts:
        ech.add(e.to_vector())
    alphabet = elts[0].alphabet
    return [FreeElt(row, alphabet) for row in ech.reduced_rows()]


def row_space_hash(elts):
    """sha256 of the reduced echelon form of the span of ``elts``.

    A span invariant for numeric λ.  Symbolic coefficients have no unique
    reduced quotient form, so there the hash is only reproducible.
    """
    rows = [[[".".join(str(x) for x in w), str(c)] for w, c in sorted(b.terms.items())]
            for b in echelon_basis(elts)]
    return hashlib.sha256(json.dumps(rows, ensure_ascii=False).encode()).hexdigest()


def presentation(params):
    """Relations in canonical form, with hashes of the spans."""
    sextet = relation_sextet(params)
    comm = comm_anticomm_form(params)
    out = {
        "casimir": casimir(params).render(),
        "sextet": [r.render() for r in sextet],
        "nonzero_relations": sum(1 for r in sextet if not r.is_zero()),
        "basis": [b.render() for b in echelon_basis(sextet)],
        "comm_anticomm": [r.render() for r in comm],
        "sextet_hash": row_space_hash(sextet),
        "comm_anticomm_hash": row_space_hash(comm),
    }
    out["span_dim"] = len(out["basis"])
    try:
        sk = rescale_sklyanin(params)
    except SpecialCaseError as e:
        out["sklyanin"] = None
        out["sklyanin_reason"] = f"{e.factor} = 0"
        return out
    scaled = [rescale_relation(r, sk, k) for r, k in zip(sextet, (1, 2, 3, 1, 2, 3))]
    skly = skly_relations(sk)
    out["sklyanin"] = [r.render() for r in skly]
    out["sklyanin_a"] = [scalar_to_json(x) for x in sk.a]
    out["sklyanin_hash"] = row_space_hash(skly)
    out["rescaled_matches_sklyanin"] = row_space_equal([r.to_vector() for r in scaled],
                                                       [r.to_vector() for r in skly])
    return out


def _base_report(command, cfg):
    params = cfg["params"]
    if params.is_symbolic:
        norm, tag = None, None
    else:
        n, t = normalize_moduli(params)
        norm, tag = n.to_json(), classify_case(params).to_json()
        tag["normalized_case"] = t.name
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": "ncsphere",
        "version": __version__,
        "command": command,
        "config": {
            "source": cfg["source"],
            "degree": cfg["degree"],
            "checks": list(cfg["checks"]) if command != "relations" else [],
            "budget_ms": cfg["budget_ms"],
            "candidate": cfg["candidate"],
        },
        "lambda": params.to_json(),
        "normalized_lambda": norm,
        "case": tag,
    }


def summarize(checks):
    counts = {s: sum(1 for c in checks if c["status"] == s) for s in STATUSES}
    if counts["fail"]:
        code = EXIT_FAIL
    elif counts["skipped(budget)"]:
        code = EXIT_BUDGET
    else:
        code = EXIT_OK
    return {"passed": counts["pass"], "failed": counts["fail"], "skipped": counts["skipped(budget)"],
            "not_applicable": counts["not-applicable"], "exit_code": code}


def run_verify(cfg, command="verify", timings=False):
    params = cfg["params"]
    if params.is_symbolic:
        raise UsageError("verify needs numeric λ")
    lam_json = json.dumps(params.to_json())
    args = [(c, lam_json, cfg["degree"], cfg["budget_ms"], cfg["candidate"]) for c in cfg["checks"]]
    if cfg["workers"] > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=cfg["workers"]) as pool:
            futures = [pool.submit(run_check, *a) for a in args]
            results = [f.result() for f in futures]
    else:
        results = [run_check(*a) for a in args]
    if not timings:
        for r in results:
            del r["timing_ms"]
    report = _base_report(command, cfg)
    report["checks"] = results
    report["summary"] = summarize(results)
    return report


def validate_report(report):
    import jsonschema

    jsonschema.validate(report, REPORT_SCHEMA)


def dump_report(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def text_summary(report):
    lines = [f"ncsphere {report['version']} {report['command']}  source={report['config']['source']}"]
    lam = report["lambda"]
    lines.append("λ = " + ", ".join(_fmt_scalar(x) for x in lam))
    if report["case"]:
        lines.append(f"case: {report['case']['name']}")
    if "presentation" in report:
        p = report["presentation"]
        lines.append(f"C = {p['casimir']}")
        for i, r in enumerate(p["sextet"], 1):
            lines.append(f"r{i}: {r}")
        lines.append(f"sextet span hash: {p['sextet_hash']}")
    for c in report["checks"]:
        t = f"  ({c['timing_ms']} ms)" if "timing_ms" in c else ""
        lines.append(f"{c['id']:<12} {c['status']}{t}")
        if c["status"] == "fail":
            lines.extend("    " + s for s in _failure_lines(c))
    s = report["summary"]
    lines.append(f"passed {s['passed']}, failed {s['failed']}, skipped {s['skipped']}, "
                 f"not applicable {s['not_applicable']}; exit {s['exit_code']}")
    return "\n".join(lines) + "\n"


def _fmt_scalar(x):
    return str(parse_gauss(x)) if isinstance(x, dict) else str(x)


def _failure_lines(check):
    cert = check["certificate"]
    out = []
    if check["id"] == "central":
        for name, e in cert.get("elements", {}).items():
            for g, nf in e.get("normal_forms", {}).items():
                out.append(f"NF([{name}, {g}]) = {nf}")
    elif "failing_minors" in cert:
        for m in cert["failing_minors"]:
            out.append(f"minor rows {m['rows']}: {m['normal_form']}")
    else:
        out.append(json.dumps(cert, sort_keys=True, ensure_ascii=False)[:500])
    return out


def _write(path, text):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def _add_common(p, with_checks=True):
    src = p.add_argument_group("λ source (exactly one)")
    src.add_argument("--lambda", dest="lambda_", metavar="JSON",
                     help='four entries: [p,q] pythagorean pairs, ints, "a/b" or {"re":..,"im":..}')
    src.add_argument("--pythagorean", metavar="LIST", help='"p,q;p,q;p,q;p,q"')
    src.add_argument("--preset", choices=sorted(PRESETS), help="named parameter point")
    p.add_argument("--config", metavar="TOML", help="config file; command-line options win")
    p.add_argument("--degree", type=int, help="degree bound (default 4, at least 2)")
    p.add_argument("--out", metavar="PATH", help="write the JSON report here")
    p.add_argument("--timings", action="store_true", help="include wall-clock timings in the report")
    if with_checks:
        p.add_argument("--checks", metavar="LIST", help="comma-separated: " + ",".join(CHECK_IDS))
        p.add_argument("--budget-ms", dest="budget_ms", type=int, help="time budget per check")
        p.add_argument("--workers", type=int, help="run checks in this many processes")
        p.add_argument("--candidate", metavar="EXPR",
                       help='extra element tested for centrality, e.g. "z0.z1 - 3/2*z2.z3"')


def build_parser():
    parser = _Parser(prog="ncsphere", description="Exact checks for noncommutative 3-spheres.")
    parser.add_argument("--version", action="version", version=f"ncsphere {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    rel = sub.add_parser("relations", help="print the presentation in canonical form")
    _add_common(rel, with_checks=False)
    rel.add_argument("--symbolic", action="store_true", help="use symbolic λ0..λ3")
    rel.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    ver = sub.add_parser("verify", help="run verification checks")
    _add_common(ver)
    ver.add_argument("--json", action="store_true", help="print the JSON report instead of text")
    rep = sub.add_parser("report", help="write a schema-validated JSON report")
    _add_common(rep)
    rep.add_argument("--from", dest="from_", metavar="PATH", help="re-emit an earlier report")
    rep.add_argument("--summary", metavar="PATH", help="also write a plain-text summary")
    return parser


def cmd_relations(cfg, as_json=False):
    report = _base_report("relations", cfg)
    report["presentation"] = presentation(cfg["params"])
    report["checks"] = []
    report["summary"] = summarize([])
    validate_report(report)
    if cfg["out"]:
        _write(cfg["out"], dump_report(report))
    sys.stdout.write(dump_report(report) if as_json else _relations_text(report))
    return EXIT_OK


def _relations_text(report):
    p = report["presentation"]
    lines = [f"λ = " + ", ".join(_fmt_scalar(x) for x in report["lambda"])]
    lines.append(f"C = {p['casimir']}")
    lines.append(f"relations ({p['nonzero_relations']} nonzero, {p['span_dim']} independent):")
    lines += [f"  r{i} = {r}" for i, r in enumerate(p["sextet"], 1)]
    lines.append("reduced basis:")
    lines += [f"  b{i} = {r}" for i, r in enumerate(p["basis"], 1)]
    lines.append("commutator form:")
    lines += [f"  c{i} = {r}" for i, r in enumerate(p["comm_anticomm"], 1)]
    if p.get("sklyanin"):
        lines.append("rescaled form:")
        lines += [f"  s{i} = {r}" for i, r in enumerate(p["sklyanin"], 1)]
    else:
        lines.append(f"rescaled form: undefined ({p.get('sklyanin_reason')})")
    lines.append(f"sextet span hash: {p['sextet_hash']}")
    return "\n".join(lines) + "\n"


def cmd_verify(cfg, as_json=False, timings=False):
    report = run_verify(cfg, timings=timings)
    validate_report(report)
    if cfg["out"]:
        _write(cfg["out"], dump_report(report))
    sys.stdout.write(dump_report(report) if as_json else text_summary(report))
    return report["summary"]["exit_code"]


def cmd_report(ns, timings=False):
    if ns.from_:
        if any(getattr(ns, k, None) is not None for k in ("lambda_", "pythagorean", "preset", "config")):
            raise UsageError("--from cannot be combined with a λ source or --config")
        try:
            with open(ns.from_, encoding="utf-8") as fh:
                report = json.load(fh)
        except OSError as e:
            raise UsageError(f"cannot read {ns.from_}: {e.strerror}") from None
        except json.JSONDecodeError as e:
            raise UsageError(f"{ns.from_}: invalid JSON at line {e.lineno} column {e.colno}") from None
        import jsonschema

        try:
            validate_report(report)
        except jsonschema.ValidationError as e:
            raise UsageError(f"{ns.from_}: report does not match schema: {e.message}") from None
        out = ns.out
    else:
        cfg = resolve_config(ns)
        report = run_verify(cfg, command="report", timings=timings)
        validate_report(report)
        out = cfg["out"]
    text = dump_report(report)
    if out:
        _write(out, text)
    else:
        sys.stdout.write(text)
    if ns.summary:
        _write(ns.summary, text_summary(report))
    return report["summary"]["exit_code"]


def main(argv=None):
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
        if ns.command is None:
            raise UsageError("choose a command: relations, verify or report")
        if ns.command == "relations":
            return cmd_relations(resolve_config(ns), ns.json)
        if ns.command == "verify":
            return cmd_verify(resolve_config(ns), ns.json, ns.timings)
        return cmd_report(ns, ns.timings)
    except UsageError as e:
        sys.stderr.write(f"ncsphere: error: {e}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
