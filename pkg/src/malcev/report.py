"""Verification driver: run catalog items and assemble a deterministic report."""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from itertools import product as cartesian

from . import __version__
from .basis import verify_basis
from .catalog import Check, IdentitySpec, render
from .lie import lie_dim, witt_dim
from .octonion import build_table
from .parser import alphabet_for, parse
from .subdirect import dim_J, dim_M, jspan_rank, zero_test
from .terms import XYZ, Element, MultiDegree, homogeneous_components, substitute, variables_of
from .tideal import DEFAULT_DEGREE_CAP, EXTENDED_DEGREE_CAP, check_identity, tideal_dim

__all__ = [
    "Config",
    "ENV_JOBS",
    "STATUSES",
    "default_jobs",
    "verify_item",
    "validate",
    "run_items",
    "dumps",
    "dims",
    "multidegrees_upto",
]

ENV_JOBS = "MALCEV_JOBS"
STATUSES = ("proved-consequence", "verified-substitutions", "failed", "skipped")
DEFAULT_SUBST_CAP = 15
DEFAULT_SWEEP_CAP = 6


@dataclass(frozen=True)
class Config:
    """Everything that can change a report; ``timings`` only adds fields."""

    degree_cap: int = DEFAULT_DEGREE_CAP
    subst_cap: int = DEFAULT_SUBST_CAP
    sweep_cap: int = DEFAULT_SWEEP_CAP
    params: tuple[int, int] = (0, 2)
    mode: str = "symbolic"
    seed: int = 0
    trials: int = 3
    strategy: str = "auto"
    timings: bool = False

    def __post_init__(self):
        if self.degree_cap > EXTENDED_DEGREE_CAP:
            raise ValueError(f"degree cap above {EXTENDED_DEGREE_CAP} is not supported")
        if self.mode not in ("symbolic", "full", "randomized"):
            raise ValueError(f"unknown zero-test mode {self.mode!r}")
        if self.strategy not in ("auto", "substitution"):
            raise ValueError(f"unknown strategy {self.strategy!r}")
        lo, hi = self.params
        if not 0 <= lo <= hi:
            raise ValueError("parameter range must satisfy 0 <= lo <= hi")
        if self.mode == "randomized" and self.trials < 1:
            raise ValueError("randomized mode needs trials >= 1")

    def to_json(self) -> dict:
        out = asdict(self)
        out["params"] = list(self.params)
        del out["timings"]
        if self.mode != "randomized":
            del out["trials"]
        return out


def default_jobs() -> int:
    raw = os.environ.get(ENV_JOBS, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def multidegrees_upto(total: int, minimum=(0, 0, 0)) -> list[MultiDegree]:
    """All multidegrees over x, y, z with 1 <= total <= ``total``, sorted."""
    out = []
    for n in range(1, total + 1):
        for a in range(n, -1, -1):
            for b in range(n - a, -1, -1):
                d = MultiDegree((a, b, n - a - b))
                if all(k >= m for k, m in zip(d, minimum)):
                    out.append(d)
    return out


def dims(d) -> dict:
    d = MultiDegree(d)
    m, lie = dim_M(d), lie_dim(d)
    return {"dim_M": m, "lie_dim": lie, "witt_dim": witt_dim(d), "dim_J": m - lie}


# identity checks


def _letter_maps(names: list[str]):
    for images in cartesian("xyz", repeat=len(names)):
        yield dict(zip(names, images))


def _substitutions(check: Check, e: Element, names: dict):
    used = sorted(variables_of(e), key=e.alphabet.names.index)
    subs = check.substitutions
    if subs == "identity" and set(used) <= set("xyz"):
        return [{v: v for v in used}]
    if subs in ("identity", "all"):
        return list(_letter_maps(used))
    return [{k: render(v, names) for k, v in m.items()} for m in subs]


def _digest(obj) -> str:
    blob = json.dumps(obj, separators=(",", ":"), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _consequence(diff: Element, cap: int) -> dict:
    parts = homogeneous_components(diff)
    certs, rec = [], {"method": "consequence", "components": 0, "ok": True}
    for comp in parts.values():
        for res in check_identity(comp, allow_degree_8=cap >= EXTENDED_DEGREE_CAP):
            rec["components"] += 1
            if not res.consequence:
                rec["ok"] = False
                rec["refutation"] = {"kind": res.refutation.kind,
                                     **{k: v for k, v in res.refutation.detail.items()
                                        if k != "functional"}}
                return rec
            certs.append(res.certificate.to_json())
    rec["certificate_terms"] = sum(len(c) for c in certs)
    rec["certificate_digest"] = _digest(certs)
    return rec


def _substitution(check: Check, diff: Element, names: dict, config: Config) -> dict:
    rec: dict = {"method": "substitution", "ok": True, "maps": 0}
    bound = 0
    for m in _substitutions(check, diff, names):
        images = {v: parse(t, XYZ) for v, t in m.items()}
        image = substitute(diff, images, XYZ)
        if image.terms and image.degree() > config.subst_cap:
            return {"method": "skipped",
                    "reason": f"image of {m} above substitution cap {config.subst_cap}"}
        test = zero_test(image, config.mode, seed=config.seed, trials=config.trials)
        rec["maps"] += 1
        bound = max(bound, test.error_bound)
        if not test.zero:
            rec["ok"] = False
            rec["witness"] = {"map": m, "nonzero": str(image)}
            break
    if config.mode == "randomized":
        rec["error_bound"] = str(bound)
    return rec


def _identity_instance(check: Check, inst, config: Config) -> dict:
    lhs, rhs = render(check.lhs, inst.names), render(check.rhs, inst.names)
    alpha = alphabet_for(lhs, rhs)
    diff = parse(lhs, alpha) - parse(rhs, alpha)
    rec: dict = {"params": inst.label, "lhs": lhs, "rhs": rhs}
    if not diff.terms:
        return {**rec, "method": "syntactic", "degree": 0, "ok": True}
    degree = diff.degree()
    rec["degree"] = degree
    try_consequence = check.mode == "consequence" or (
        check.mode == "both" and config.strategy == "auto")
    if try_consequence and degree <= config.degree_cap:
        return {**rec, **_consequence(diff, config.degree_cap)}
    if check.mode == "consequence":
        return {**rec, "method": "skipped", "reason": f"degree {degree} above cap {config.degree_cap}"}
    if degree > config.subst_cap:
        return {**rec, "method": "skipped",
                "reason": f"degree {degree} above substitution cap {config.subst_cap}"}
    return {**rec, **_substitution(check, diff, inst.names, config)}


# structural checks


def _sweep(check: Check, config: Config, minimum=(0, 0, 0)):
    if "multidegrees" in check.options:
        return [MultiDegree(d) for d in check.options["multidegrees"]]
    top = min(check.options.get("max_total", config.sweep_cap), config.sweep_cap)
    return multidegrees_upto(top, minimum)


def _table(check: Check, config: Config) -> list[dict]:
    stats = build_table().verify()
    witnesses = stats["jacobi_witnesses"]
    ok = stats["antisymmetric"] and not stats["malcev_failures"] and bool(witnesses)
    return [{"method": "model", "ok": ok, "antisymmetric": stats["antisymmetric"],
             "malcev_failures": stats["malcev_failures"],
             "quadruples_checked": stats["quadruples_checked"],
             "jacobi_witnesses": len(witnesses), "first_witness": list(witnesses[0])}]


def _basis(check: Check, config: Config) -> list[dict]:
    out = []
    for d in _sweep(check, config):
        rep = verify_basis(d)
        rec = {"multidegree": list(d), "method": "model", "count": rep.count, "rank": rep.rank,
               "dim_j": rep.dim_j, "ok": rep.ok}
        if not rep.ok:
            rec["descriptors"] = [desc.label() for desc in rep.descriptors]
        out.append(rec)
    return out


def _jspan(check: Check, config: Config) -> list[dict]:
    out = []
    for d in _sweep(check, config, minimum=(1, 1, 1)):
        r, dj = jspan_rank(d), dim_J(d)
        out.append({"multidegree": list(d), "method": "model", "jspan_rank": r, "dim_j": dj,
                    "ok": r == dj})
    return out


def _dims(check: Check, config: Config) -> list[dict]:
    out = []
    for d in _sweep(check, config):
        rec = dims(d)
        out.append({"multidegree": list(d), "method": "model", **rec,
                    "ok": rec["lie_dim"] == rec["witt_dim"] and rec["dim_J"] >= 0})
    return out


def _faithful(check: Check, config: Config) -> list[dict]:
    out = []
    for d in _sweep(check, config):
        if d.total > config.degree_cap:
            out.append({"multidegree": list(d), "method": "skipped",
                        "reason": f"degree {d.total} above cap {config.degree_cap}"})
            continue
        t, m = tideal_dim(d), dim_M(d)
        out.append({"multidegree": list(d), "method": "model", "tideal_dim": t, "dim_M": m,
                    "ok": t == m})
    return out


_STRUCTURAL = {"table": _table, "basis": _basis, "jspan": _jspan, "dims": _dims,
               "faithful": _faithful}


def _run_check(check: Check, config: Config) -> list[dict]:
    if check.kind is not None:
        return _STRUCTURAL[check.kind](check, config)
    lo, hi = config.params
    return [_identity_instance(check, inst, config) for inst in check.instances(lo, hi)]


def _status(records: list[dict]) -> tuple[str, dict]:
    counts = {"consequence": 0, "substitution": 0, "model": 0, "syntactic": 0, "skipped": 0}
    for r in records:
        counts[r["method"]] += 1
    failed = [r for r in records if r["method"] != "skipped" and not r["ok"]]
    if failed:
        return "failed", counts
    if len(records) == counts["skipped"]:
        return "skipped", counts
    if counts["substitution"] or counts["model"] or counts["skipped"]:
        return "verified-substitutions", counts
    return "proved-consequence", counts


def verify_item(spec: IdentitySpec, config: Config) -> dict:
    start = time.perf_counter()
    checks = []
    records_all = []
    for i, check in enumerate(spec.checks):
        records = _run_check(check, config)
        records_all.extend(records)
        checks.append({"index": i, "instances": records})
    status, counts = _status(records_all)
    item: dict = {"id": spec.id, "title": spec.title, "status": status, "coverage": counts}
    if status == "failed":
        item["witness"] = next(r for r in records_all if r["method"] != "skipped" and not r["ok"])
    elif status == "skipped":
        item["reason"] = records_all[0].get("reason", "no instance within the caps") \
            if records_all else "no instances in the parameter range"
    if spec.notes:
        item["notes"] = spec.notes
    item["checks"] = checks
    if config.timings:
        item["seconds"] = round(time.perf_counter() - start, 3)
    return item


def validate(spec: IdentitySpec, config: Config) -> None:
    """Render and parse every instance; raises on a malformed item."""
    lo, hi = config.params
    for check in spec.checks:
        if check.kind is not None:
            continue
        for inst in check.instances(lo, hi):
            lhs, rhs = render(check.lhs, inst.names), render(check.rhs, inst.names)
            alpha = alphabet_for(lhs, rhs)
            parse(lhs, alpha)
            parse(rhs, alpha)


def _verify_args(args):
    return verify_item(*args)


def run_items(items: list[IdentitySpec], config: Config, jobs: int = 1) -> dict:
    """Run every item; the result is assembled in item order, whatever ``jobs`` is."""
    if jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_verify_args, [(it, config) for it in items]))
    else:
        results = [verify_item(it, config) for it in items]
    summary = {s: sum(r["status"] == s for r in results) for s in STATUSES}
    summary["total"] = len(results)
    return {"tool": "malcev", "version": __version__, "config": config.to_json(),
            "summary": summary, "items": results}


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
