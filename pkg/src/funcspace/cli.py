"""Command-line front end: list, verify, sweep, and report.

Exit codes: 0 when every selected check/sweep passes, 1 when any fails,
2 on usage or configuration errors.  Re-running with identical
configuration reproduces byte-identical report files; timestamps and
provenance live in a separate run_meta.json.
"""

from __future__ import annotations

import argparse
import datetime
import json
import math
import os
import sys
from multiprocessing import Pool
from typing import Dict, List, Optional

from .checks import builtin_catalog, get_check, run_check
from .config import RunConfig, load_config
from .corpus import corpus_manifest_text, get_member, load_corpus_manifest
from .errors import FuncspaceError, UnknownIdError
from .extrapolate import get_sweep, run_sweep, sharpness_probe, sweep_catalog


def _json_dump(obj, path: str):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, sort_keys=True, indent=1)
        fh.write("\n")


def _merge_report(out_dir: str, section: str, payload: Dict):
    path = os.path.join(out_dir, "report.json")
    data = {}
    if os.path.exists(path):
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    data[section] = payload
    _json_dump(data, path)
    return path


def _write_meta(out_dir: str):
    meta = {
        "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
        "seed": os.environ.get("FUNCSPACE_SEED", ""),
    }
    _json_dump(meta, os.path.join(out_dir, "run_meta.json"))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_list() -> int:
    rows = []
    for spec in builtin_catalog():
        rows.append((spec.id, "check", spec.anchor, len(spec.members)))
    for spec in sweep_catalog():
        rows.append((spec.id, "sweep", spec.anchor, len(spec.members)))
    width = max(len(r[0]) for r in rows) + 2
    print(f"{'id':<{width}}{'kind':<8}{'members':<9}anchor")
    for rid, kind, anchor, nmem in rows:
        print(f"{rid:<{width}}{kind:<8}{nmem:<9}{anchor}")
    print(f"\n{len(rows)} catalog entries "
          f"({sum(1 for r in rows if r[1] == 'check')} checks, "
          f"{sum(1 for r in rows if r[1] == 'sweep')} sweeps)")
    return 0


def _check_job(args):
    check_id, member_id, stability_tol = args
    spec = get_check(check_id)
    member = get_member(member_id)
    return run_check(spec, member, stability_tol=stability_tol).to_dict()


def _sweep_job(args):
    sweep_id, member_id = args
    spec = get_sweep(sweep_id)
    member = get_member(member_id)
    return run_sweep(spec, member).to_dict()


def _select_ids(requested: List[str], known: List[str]) -> List[str]:
    if requested == ["all"] or not requested:
        return list(known)
    for rid in requested:
        if rid not in known:
            raise UnknownIdError(f"unknown id {rid!r}; known: "
                                 f"{', '.join(known)}")
    return requested


def _run_jobs(jobs, worker, tasks):
    if jobs > 1 and len(tasks) > 1:
        with Pool(processes=jobs) as pool:
            return pool.map(worker, tasks)
    return [worker(t) for t in tasks]


def cmd_verify(ids: List[str], cfg: RunConfig) -> int:
    known = [s.id for s in builtin_catalog()]
    selected = _select_ids(ids, known)
    os.makedirs(cfg.out_dir, exist_ok=True)
    tasks = []
    for cid in selected:
        spec = get_check(cid)
        for mid in spec.members:
            tasks.append((cid, mid, cfg.stability_tol))
    results = _run_jobs(cfg.jobs, _check_job, tasks)
    by_check: Dict[str, list] = {cid: [] for cid in selected}
    for res in sorted(results, key=lambda r: (r["id"], r["member"])):
        by_check[res["id"]].append(res)
    all_pass = True
    payload = {}
    for cid in selected:
        spec = get_check(cid)
        budget = cfg.budget_for(cid, spec.budget)
        reports = by_check[cid]
        for rep in reports:
            if not rep["skipped"]:
                rep["passed"] = bool(rep["passed"] and
                                     rep["empirical_constant"] <= budget)
        worst = max((r["empirical_constant"] for r in reports
                     if not r["skipped"]), default=0.0)
        ok = all(r["passed"] for r in reports)
        all_pass &= ok
        payload[cid] = {"budget": budget, "worst_constant": worst,
                        "passed": ok, "reports": reports,
                        "description": spec.description}
        csv_path = os.path.join(cfg.out_dir, f"ratios_{cid}.csv")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("member,t,ratio\n")
            for rep in reports:
                for t, r in zip(rep["t_nodes"], rep["ratios"]):
                    fh.write(f"{rep['member']},{t!r},{r!r}\n")
        mark = "PASS" if ok else "FAIL"
        print(f"{cid}: {mark}  worst constant {worst:.4g} "
              f"(budget {budget:g})")
    _merge_report(cfg.out_dir, "checks", payload)
    _write_meta(cfg.out_dir)
    return 0 if all_pass else 1


def cmd_sweep(ids: List[str], cfg: RunConfig) -> int:
    from .figures import sweep_figure
    known = [s.id for s in sweep_catalog()]
    selected = _select_ids(ids, known)
    os.makedirs(cfg.out_dir, exist_ok=True)
    tasks = []
    for sid in selected:
        spec = get_sweep(sid)
        for mid in spec.members:
            tasks.append((sid, mid))
    results = _run_jobs(cfg.jobs, _sweep_job, tasks)
    by_sweep: Dict[str, list] = {sid: [] for sid in selected}
    for res in sorted(results, key=lambda r: (r["id"], r["member"])):
        by_sweep[res["id"]].append(res)
    all_pass = True
    payload = {}
    for sid in selected:
        spec = get_sweep(sid)
        reports = by_sweep[sid]
        ok = all(r["passed"] for r in reports)
        all_pass &= ok
        payload[sid] = {"passed": ok, "reports": reports,
                        "description": spec.description}
        csv_path = os.path.join(cfg.out_dir, f"sweep_{sid}.csv")
        with open(csv_path, "w", encoding="utf-8") as fh:
            fh.write("member,param,lhs,rhs,ratio,normalized\n")
            for rep in reports:
                for row in zip(rep["params"], rep["lhs"], rep["rhs"],
                               rep["ratios"], rep["normalized"]):
                    fh.write(f"{rep['member']}," +
                             ",".join(repr(v) for v in row) + "\n")
        sweep_figure(sid, reports, os.path.join(cfg.out_dir,
                                                f"sweep_{sid}.svg"))
        slopes = ", ".join(f"{r['member']}:{r['slope']:+.3f}"
                           for r in reports)
        mark = "PASS" if ok else "FAIL"
        print(f"{sid}: {mark}  residual slopes {slopes}")
    _merge_report(cfg.out_dir, "sweeps", payload)
    _write_meta(cfg.out_dir)
    return 0 if all_pass else 1


def cmd_probe(cfg: RunConfig) -> int:
    os.makedirs(cfg.out_dir, exist_ok=True)
    growth = sharpness_probe("PW-10:q=2")
    bounded = sharpness_probe("PW-02")
    payload = {"PW-10:q=2": growth.to_dict(), "PW-02": bounded.to_dict()}
    _merge_report(cfg.out_dir, "probes", payload)
    _write_meta(cfg.out_dir)
    ok = growth.verdict == "growth" and bounded.verdict == "bounded"
    print(f"probe PW-10:q=2: {growth.verdict} "
          f"(x{growth.growth_factor:.1f} along {growth.family})")
    print(f"probe PW-02: {bounded.verdict} "
          f"(x{bounded.growth_factor:.2f})")
    return 0 if ok else 1


def cmd_report(directory: str) -> int:
    from .figures import constants_figure
    path = os.path.join(directory, "report.json")
    if not os.path.isdir(directory) or not os.path.exists(path):
        print(f"no report.json under {directory!r}", file=sys.stderr)
        return 2
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    rows = []
    lines = []
    for cid in sorted(data.get("checks", {})):
        entry = data["checks"][cid]
        rows.append({"id": cid, "worst_constant": entry["worst_constant"],
                     "budget": entry["budget"]})
        flag = "PASS" if entry["passed"] else "FAIL"
        outlier = "  (budget outlier)" \
            if entry["worst_constant"] > 0.5 * entry["budget"] else ""
        lines.append(f"{cid:<8} {flag}  worst={entry['worst_constant']:.4g} "
                     f"budget={entry['budget']:g}{outlier}")
    for sid in sorted(data.get("sweeps", {})):
        entry = data["sweeps"][sid]
        flag = "PASS" if entry["passed"] else "FAIL"
        slopes = [r["slope"] for r in entry["reports"] if r["params"]]
        worst = max((abs(s) for s in slopes), default=0.0)
        lines.append(f"{sid:<8} {flag}  |residual slope| <= {worst:.3f}")
    if not lines:
        print("report.json holds no check or sweep sections",
              file=sys.stderr)
        return 2
    print("\n".join(lines))
    summary = {"checks": {r["id"]: r for r in rows},
               "n_entries": len(lines)}
    _json_dump(summary, os.path.join(directory, "summary.json"))
    if rows:
        constants_figure(rows, os.path.join(directory, "constants.svg"))
    return 0


# ---------------------------------------------------------------------------
# argument handling
# ---------------------------------------------------------------------------


def _build_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if args.grid_ratio is not None:
        cfg.grid_ratio = args.grid_ratio
    if args.out is not None:
        cfg.out_dir = args.out
    if args.jobs is not None:
        cfg.jobs = args.jobs
    for spec in args.budget or []:
        if "=" not in spec:
            raise FuncspaceError(f"--budget expects ID=VALUE, got {spec!r}")
        key, val = spec.split("=", 1)
        cfg.budgets[key.strip()] = float(val)
    cfg.__post_init__()
    if args.corpus:
        cfg.corpus_path = args.corpus
        with open(args.corpus, "r", encoding="utf-8") as fh:
            load_corpus_manifest(fh.read())  # validates the manifest
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    parser = argparse.ArgumentParser(
        prog="funcspace",
        description="verification harness for rearrangement-based "
                    "function-space inequalities")
    sub = parser.add_subparsers(dest="command")
    sub.add_parser("list", help="print the check and sweep catalogs")

    def add_run_flags(p):
        p.add_argument("ids", nargs="*", default=["all"],
                       help="catalog ids or 'all'")
        p.add_argument("--config", help="path to a run configuration file")
        p.add_argument("--grid-ratio", type=float, default=None)
        p.add_argument("--budget", action="append", metavar="ID=VALUE")
        p.add_argument("--out", default=None)
        p.add_argument("--jobs", type=int, default=None)
        p.add_argument("--corpus", default=None,
                       help="path to a corpus manifest")

    add_run_flags(sub.add_parser("verify", help="run pointwise checks"))
    add_run_flags(sub.add_parser("sweep", help="run extrapolation sweeps"))
    add_run_flags(sub.add_parser("probe", help="run sharpness probes"))
    rep = sub.add_parser("report", help="summarize a report directory")
    rep.add_argument("directory")
    man = sub.add_parser("manifest", help="print the default corpus manifest")

    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_help()
        return 2
    try:
        if args.command == "list":
            return cmd_list()
        if args.command == "manifest":
            sys.stdout.write(corpus_manifest_text())
            return 0
        if args.command == "report":
            return cmd_report(args.directory)
        cfg = _build_config(args)
        if args.command == "verify":
            return cmd_verify(args.ids, cfg)
        if args.command == "sweep":
            return cmd_sweep(args.ids, cfg)
        if args.command == "probe":
            return cmd_probe(cfg)
    except (UnknownIdError, FuncspaceError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
