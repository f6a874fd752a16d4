"""Command-line interface: ``analyze``, ``batch``, ``validate``.

Configs and reports are JSON; curve lists are CSV with header
``label,a1,a2,a3,a4,a6``.  Exit codes: 0 success (Undetermined rows allowed),
2 validation or config failure, 3 internal Mismatch FAILURE, 4 Undetermined
present under ``--strict``.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Optional

from .curves import SingularCurveError, WeierstrassCurve
from .parity import (
    SCHEMA_VERSION,
    ParityReport,
    ParityRow,
    SelmerBound,
    SiteAudit,
    analyze,
)
from .tower import (
    PrimeSite,
    QuadraticFieldSpec,
    SiteOverrides,
    TowerSpec,
    sites_above,
    validate_tower,
)
from .verdicts import ConstantVerdict, DeltaVerdict

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_FAILURE = 3
EXIT_STRICT_UNDETERMINED = 4

CSV_HEADER = ["label", "a1", "a2", "a3", "a4", "a6"]


class ConfigError(Exception):
    """Structured config failure; each message is anchored to a field path."""

    def __init__(self, messages):
        self.messages = list(messages)
        super().__init__("; ".join(self.messages))


# ---------------------------------------------------------------------------
# config parsing


def _require(cond: bool, errors: list, msg: str) -> bool:
    if not cond:
        errors.append(msg)
    return cond


def load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError([f"{path}: {exc}"]) from exc
    except json.JSONDecodeError as exc:
        raise ConfigError([f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from exc
    if not isinstance(raw, dict):
        raise ConfigError([f"{path}: top-level value must be a JSON object"])
    return raw


def _resolve_label(label: str, curve_file: Optional[str], errors: list):
    if not curve_file:
        errors.append("curve: label given but no curve_file to resolve it against")
        return None
    try:
        rows, row_errors = read_curve_csv(curve_file)
    except ConfigError as exc:
        errors.extend(exc.messages)
        return None
    for name, curve in rows:
        if name == label:
            return curve
    errors.append(f"curve: label {label!r} not found in {curve_file}")
    return None


def parse_curve(raw: Any, curve_file: Optional[str], errors: list):
    if isinstance(raw, str):
        return _resolve_label(raw, curve_file, errors)
    if (isinstance(raw, list) and len(raw) == 5
            and all(isinstance(a, int) for a in raw)):
        try:
            return WeierstrassCurve(*raw)
        except SingularCurveError:
            errors.append("curve: discriminant is zero (singular model)")
            return None
    errors.append("curve: expected [a1,a2,a3,a4,a6] (five integers) or a label string")
    return None


def _parse_overrides(raw: Any, errors: list) -> dict[int, SiteOverrides]:
    out: dict[int, SiteOverrides] = {}
    if raw is None:
        return out
    if not isinstance(raw, dict):
        errors.append("overrides: expected an object keyed by prime")
        return out
    for key, val in raw.items():
        try:
            ell = int(key)
        except ValueError:
            errors.append(f"overrides.{key}: key must be a prime (integer)")
            continue
        if not isinstance(val, dict):
            errors.append(f"overrides.{key}: expected an object")
            continue
        defect = val.get("defect_override")
        if defect is not None and defect not in (1, 2, 3, 4, 6, "noncyclic"):
            errors.append(f"overrides.{key}.defect_override: "
                          "expected 1|2|3|4|6|\"noncyclic\"")
            continue
        anomalous = val.get("anomalous_override")
        if anomalous is not None and not isinstance(anomalous, bool):
            errors.append(f"overrides.{key}.anomalous_override: expected boolean")
            continue
        red = val.get("reduction_over_Kv_override")
        if red is not None and red not in (
                "good", "multiplicative_split", "multiplicative_nonsplit",
                "additive"):
            errors.append(f"overrides.{key}.reduction_over_Kv_override: "
                          "unknown value {red!r}")
            continue
        out[ell] = SiteOverrides(defect=defect, anomalous=anomalous,
                                 reduction_over_Kv=red)
    return out


def parse_tower(raw: dict, errors: list) -> Optional[TowerSpec]:
    ok = True
    for key in ("d", "p", "n"):
        ok &= _require(isinstance(raw.get(key), int), errors,
                       f"{key}: required integer field")
    sites_raw = raw.get("ramified_sites")
    ok &= _require(isinstance(sites_raw, list), errors,
                   "ramified_sites: required list of {ell, which?}")
    if not ok:
        return None
    K = QuadraticFieldSpec(raw["d"])
    sites = []
    for i, entry in enumerate(sites_raw):
        if not (isinstance(entry, dict) and isinstance(entry.get("ell"), int)):
            errors.append(f"ramified_sites[{i}]: expected {{\"ell\": prime, "
                          "\"which\": \"first\"|\"second\"?}}")
            continue
        ell = entry["ell"]
        which = entry.get("which")
        if which not in (None, "first", "second"):
            errors.append(f"ramified_sites[{i}].which: expected \"first\" or \"second\"")
            continue
        above = sites_above(ell, K)
        if which is None:
            sites.extend(above)
        else:
            matches = [s for s in above if s.which == which]
            if not matches:
                errors.append(f"ramified_sites[{i}]: no site {which!r} above {ell} "
                              f"(prime is {above[0].split_type} in K)")
                continue
            sites.extend(matches)
    overrides = _parse_overrides(raw.get("overrides"), errors)
    if errors:
        return None
    return TowerSpec(K=K, p=raw["p"], n=raw["n"],
                     ramified_sites=frozenset(sites), overrides=overrides)


def parse_config(raw: dict, *, need_curve: bool = True):
    """Return (curve, tower, dim_Sp_E_K) or raise ConfigError."""
    errors: list[str] = []
    curve = None
    if need_curve or "curve" in raw:
        curve = parse_curve(raw.get("curve"), raw.get("curve_file"), errors)
    tower = parse_tower(raw, errors)
    dim = raw.get("dim_Sp_E_K")
    if dim is not None and not (isinstance(dim, int) and dim >= 0):
        errors.append("dim_Sp_E_K: expected a nonnegative integer")
    if errors:
        raise ConfigError(errors)
    return curve, tower, dim


# ---------------------------------------------------------------------------
# report serialization


def _site_to_dict(s: PrimeSite) -> dict:
    return {"ell": s.ell, "split_type": s.split_type, "which": s.which}


def _site_from_dict(d: dict) -> PrimeSite:
    return PrimeSite(ell=d["ell"], split_type=d["split_type"], which=d["which"])


def _gamma_to_dict(v: ConstantVerdict) -> dict:
    return {"value": v.value, "case_tag": v.case_tag, "citation": v.citation,
            "detail": v.detail}


def _delta_to_dict(v: DeltaVerdict) -> dict:
    d = _gamma_to_dict(v)
    d["pair_sum"] = v.pair_sum
    return d


def _row_to_dict(r: ParityRow) -> dict:
    return {
        "place": r.place,
        "gamma": _gamma_to_dict(r.gamma) if r.gamma else None,
        "deltas": [{"site": _site_to_dict(s), **_delta_to_dict(v)}
                   for s, v in r.deltas],
        "delta_sum": r.delta_sum,
        "status": r.status,
        "note": r.note,
    }


def _tower_to_dict(T: TowerSpec) -> dict:
    return {
        "d": T.K.d,
        "p": T.p,
        "n": T.n,
        "ramified_sites": [_site_to_dict(s)
                           for s in sorted(T.ramified_sites,
                                           key=lambda s: (s.ell, s.which))],
        "overrides": {
            str(ell): {"defect_override": o.defect,
                       "anomalous_override": o.anomalous,
                       "reduction_over_Kv_override": o.reduction_over_Kv}
            for ell, o in sorted(T.overrides.items())
        },
    }


def report_to_dict(rep: ParityReport) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "curve": list(rep.curve.ainvs()),
        "tower": _tower_to_dict(rep.tower),
        "rows": [_row_to_dict(r) for r in rep.rows],
        "S": [_site_to_dict(s) for s in rep.S],
        "mr64_sum": rep.mr64_sum,
        "S_frak": [_site_to_dict(s) for s in rep.S_frak],
        "S_m": [_site_to_dict(s) for s in rep.S_m],
        "hypothesis_audit": [
            {"site": _site_to_dict(a.site), "condition": a.condition,
             "passes": a.passes, "reason": a.reason}
            for a in rep.hypothesis_audit
        ],
        "selmer_bound": None if rep.selmer_bound is None else {
            "applicable": rep.selmer_bound.applicable,
            "bound": rep.selmer_bound.bound,
            "dim_Sp_E_K": rep.selmer_bound.dim_Sp_E_K,
            "s_m_size": rep.selmer_bound.s_m_size,
            "reasons": list(rep.selmer_bound.reasons),
        },
        "relative_parity": rep.relative_parity,
        "failure": rep.failure,
        "has_undetermined": rep.has_undetermined,
        "notes": rep.notes,
    }


def report_from_dict(d: dict) -> ParityReport:
    """Inverse of report_to_dict (round-trip support)."""
    tw = d["tower"]
    overrides = {
        int(k): SiteOverrides(defect=o["defect_override"],
                              anomalous=o["anomalous_override"],
                              reduction_over_Kv=o["reduction_over_Kv_override"])
        for k, o in tw["overrides"].items()
    }
    T = TowerSpec(K=QuadraticFieldSpec(tw["d"]), p=tw["p"], n=tw["n"],
                  ramified_sites=frozenset(_site_from_dict(s)
                                           for s in tw["ramified_sites"]),
                  overrides=overrides)
    rows = []
    for r in d["rows"]:
        g = r["gamma"]
        rows.append(ParityRow(
            place=r["place"],
            gamma=None if g is None else ConstantVerdict(
                value=g["value"], case_tag=g["case_tag"],
                citation=g["citation"], detail=g["detail"]),
            deltas=tuple(
                (_site_from_dict(e["site"]),
                 DeltaVerdict(value=e["value"], case_tag=e["case_tag"],
                              citation=e["citation"], detail=e["detail"],
                              pair_sum=e["pair_sum"]))
                for e in r["deltas"]),
            delta_sum=r["delta_sum"], status=r["status"], note=r["note"]))
    sb = d["selmer_bound"]
    return ParityReport(
        curve=WeierstrassCurve(*d["curve"]),
        tower=T,
        rows=rows,
        S=[_site_from_dict(s) for s in d["S"]],
        mr64_sum=d["mr64_sum"],
        S_frak=[_site_from_dict(s) for s in d["S_frak"]],
        S_m=[_site_from_dict(s) for s in d["S_m"]],
        hypothesis_audit=[
            SiteAudit(site=_site_from_dict(a["site"]), condition=a["condition"],
                      passes=a["passes"], reason=a["reason"])
            for a in d["hypothesis_audit"]],
        selmer_bound=None if sb is None else SelmerBound(
            applicable=sb["applicable"], bound=sb["bound"],
            dim_Sp_E_K=sb["dim_Sp_E_K"], s_m_size=sb["s_m_size"],
            reasons=tuple(sb["reasons"])),
        relative_parity=d["relative_parity"],
        notes=list(d["notes"]),
    )


def _fmt_value(v: Optional[int]) -> str:
    return "?" if v is None else str(v)


def render_text(d: dict) -> str:
    lines = []
    a = d["curve"]
    tw = d["tower"]
    lines.append(f"curve [{','.join(map(str, a))}]  "
                 f"K = Q(sqrt {tw['d']}), p = {tw['p']}, n = {tw['n']}")
    lines.append(f"{'place':>8}  {'gamma':>5}  {'sum delta':>9}  status")
    for r in d["rows"]:
        g = r["gamma"]
        gval = "-" if g is None else _fmt_value(g["value"])
        lines.append(f"{str(r['place']):>8}  {gval:>5}  "
                     f"{_fmt_value(r['delta_sum']):>9}  {r['status']}")
    lines.append(f"mr64_sum = {_fmt_value(d['mr64_sum'])}   "
                 f"|S_frak| = {len(d['S_frak'])}   |S_m| = {len(d['S_m'])}")
    sb = d["selmer_bound"]
    if sb is not None:
        if sb["applicable"]:
            lines.append(f"Selmer growth bound: dim S_p(E/F) >= {sb['bound']}")
        else:
            lines.append("Selmer growth bound: not applicable ("
                         + "; ".join(sb["reasons"]) + ")")
    if d["failure"]:
        lines.append("FAILURE: parity mismatch at a determined row "
                     "(implementation bug, not arithmetic)")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# curve CSV


def read_curve_csv(path: str):
    """Return (rows, errors): rows are (label, curve), errors are per-line
    messages.  Raises ConfigError only on file-level problems."""
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise ConfigError([f"{path}: empty file"]) from None
            if [h.strip() for h in header] != CSV_HEADER:
                raise ConfigError(
                    [f"{path}:1: expected header {','.join(CSV_HEADER)}"])
            rows, errors = [], []
            for lineno, row in enumerate(reader, start=2):
                if not row or all(not c.strip() for c in row):
                    continue
                if len(row) != 6:
                    errors.append(f"{path}:{lineno}: expected 6 fields, got {len(row)}")
                    continue
                label = row[0].strip()
                try:
                    coeffs = [int(c) for c in row[1:]]
                except ValueError:
                    errors.append(f"{path}:{lineno}: non-integer coefficient")
                    continue
                try:
                    rows.append((label, WeierstrassCurve(*coeffs)))
                except SingularCurveError:
                    errors.append(f"{path}:{lineno}: singular model "
                                  f"(discriminant zero)")
            return rows, errors
    except OSError as exc:
        raise ConfigError([f"{path}: {exc}"]) from exc


# ---------------------------------------------------------------------------
# commands


def _emit(text: str, quiet: bool) -> None:
    if not quiet:
        sys.stdout.write(text)


def run_analyze(config_path: str, *, fmt: str = "json", strict: bool = False,
                quiet: bool = False) -> int:
    try:
        raw = load_config(config_path)
        E, T, dim = parse_config(raw)
    except ConfigError as exc:
        _emit("\n".join(exc.messages) + "\n", quiet)
        return EXIT_INVALID
    violations = validate_tower(T, E)
    if violations:
        _emit("\n".join(f"{v.code}: {v.message} [{v.citation}]"
                        for v in violations) + "\n", quiet)
        return EXIT_INVALID
    rep = analyze(E, T, dim_Sp_E_K=dim)
    d = report_to_dict(rep)
    _emit(json.dumps(d, indent=2) + "\n" if fmt == "json" else render_text(d),
          quiet)
    if rep.failure:
        return EXIT_FAILURE
    if strict and rep.has_undetermined:
        return EXIT_STRICT_UNDETERMINED
    return EXIT_OK


def run_validate(config_path: str, *, fmt: str = "json",
                 quiet: bool = False) -> int:
    try:
        raw = load_config(config_path)
        E, T, _dim = parse_config(raw, need_curve=False)
    except ConfigError as exc:
        _emit("\n".join(exc.messages) + "\n", quiet)
        return EXIT_INVALID
    violations = validate_tower(T, E)
    if fmt == "json":
        _emit(json.dumps({
            "schema_version": SCHEMA_VERSION,
            "valid": not violations,
            "violations": [{"code": v.code, "message": v.message,
                            "citation": v.citation} for v in violations],
        }, indent=2) + "\n", quiet)
    else:
        if violations:
            _emit("\n".join(f"{v.code}: {v.message} [{v.citation}]"
                            for v in violations) + "\n", quiet)
        else:
            _emit("valid\n", quiet)
    return EXIT_INVALID if violations else EXIT_OK


def _analyze_one(label: str, E: WeierstrassCurve, T: TowerSpec,
                 dim: Optional[int]) -> dict:
    violations = validate_tower(T, E)
    if violations:
        return {"label": label, "error": "; ".join(
            f"{v.code}: {v.message}" for v in violations)}
    try:
        d = report_to_dict(analyze(E, T, dim_Sp_E_K=dim))
    except Exception as exc:  # per-row isolation: batch must keep going
        return {"label": label, "error": f"{type(exc).__name__}: {exc}"}
    d["label"] = label
    return d


def run_batch(curves_path: str, config_path: str, *, fmt: str = "json",
              strict: bool = False, quiet: bool = False, jobs: int = 1) -> int:
    try:
        raw = load_config(config_path)
        _, T, dim = parse_config(raw, need_curve=False)
        rows, row_errors = read_curve_csv(curves_path)
    except ConfigError as exc:
        _emit("\n".join(exc.messages) + "\n", quiet)
        return EXIT_INVALID
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(
                lambda lc: _analyze_one(lc[0], lc[1], T, dim), rows))
    else:
        reports = [_analyze_one(label, E, T, dim) for label, E in rows]
    summary = {
        "curves": len(rows),
        "row_errors": len(row_errors) + sum("error" in r for r in reports),
        "failures": sum(r.get("failure", False) for r in reports),
        "undetermined": sum(r.get("has_undetermined", False) for r in reports),
        "clean": sum(1 for r in reports
                     if "error" not in r and not r["failure"]
                     and not r["has_undetermined"]),
    }
    combined = {
        "schema_version": SCHEMA_VERSION,
        "tower": _tower_to_dict(T),
        "reports": reports,
        "errors": row_errors + [f"{r['label']}: {r['error']}"
                                for r in reports if "error" in r],
        "summary": summary,
    }
    if fmt == "json":
        _emit(json.dumps(combined, indent=2) + "\n", quiet)
    else:
        out = []
        for r in reports:
            if "error" in r:
                out.append(f"== {r['label']}: ERROR {r['error']}\n")
            else:
                out.append(f"== {r['label']}\n" + render_text(r))
        out.append("summary: " + json.dumps(summary) + "\n")
        _emit("".join(out), quiet)
    if summary["failures"]:
        return EXIT_FAILURE
    if strict and summary["undetermined"]:
        return EXIT_STRICT_UNDETERMINED
    return EXIT_OK


# ---------------------------------------------------------------------------
# entry point


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--format", choices=("json", "text"), default="json")
    sp.add_argument("--quiet", action="store_true",
                    help="suppress output (exit code only)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dihedral-parity",
        description="Analytic/arithmetic local parity constants for elliptic "
                    "curves in dihedral towers.")
    sub = parser.add_subparsers(dest="command", required=True)

    pa = sub.add_parser("analyze", help="analyze one (curve, tower) config")
    pa.add_argument("config", help="JSON config file")
    pa.add_argument("--strict", action="store_true",
                    help="exit 4 if any row is Undetermined")
    _add_common(pa)

    pb = sub.add_parser("batch", help="analyze a CSV of curves in one tower")
    pb.add_argument("curves", help="CSV file: label,a1,a2,a3,a4,a6")
    pb.add_argument("config", help="JSON tower config file")
    pb.add_argument("--strict", action="store_true")
    pb.add_argument("--jobs", type=int, default=1,
                    help="parallel workers (output order is input order)")
    _add_common(pb)

    pv = sub.add_parser("validate", help="validate a tower config")
    pv.add_argument("config", help="JSON config file")
    _add_common(pv)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "analyze":
        return run_analyze(args.config, fmt=args.format, strict=args.strict,
                           quiet=args.quiet)
    if args.command == "batch":
        return run_batch(args.curves, args.config, fmt=args.format,
                         strict=args.strict, quiet=args.quiet, jobs=args.jobs)
    return run_validate(args.config, fmt=args.format, quiet=args.quiet)


if __name__ == "__main__":
    sys.exit(main())
