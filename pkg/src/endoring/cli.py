"""``endoring`` command-line front end.

Exit codes: 0 success, 1 oracle disagreement, 2 invalid input,
3 I/O failure, 4 enumeration guard exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile
from pathlib import Path
from typing import Sequence

from . import __version__
from .battery import load_battery, run_battery
from .config import ExperimentConfig
from .endo import endo_from_json, enumerate_endos, is_idempotent
from .errors import EndoRingError, EnumerationGuardExceeded
from .groups import PGroup, Subgroup, span
from .radical import quasi_inverse, radical_membership, radical_report
from .topologies import (
    admissibility_sweep,
    annl_identity_check,
    pv_exhaustive_check,
    pv_right_ideal_check,
    witness_nonadmissible_annr,
    witness_nonadmissible_pv,
)
from .tower import BoundedTower, TowerSpec, build_stage, divergence_report, reports_to_csv, reports_to_json

EXIT_OK, EXIT_DISAGREE, EXIT_INVALID, EXIT_IO, EXIT_GUARD = 0, 1, 2, 3, 4


def write_atomic(path: str | Path, text: str) -> None:
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def subgroup_from_json(obj, A: PGroup) -> Subgroup:
    """``{"group": ..., "gens": [[...], ...]}`` or a bare list of generators."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if isinstance(obj, dict):
        if PGroup.parse(obj["group"]) != A:
            raise ValueError(f"subgroup group {obj['group']} differs from {A}")
        obj = obj["gens"]
    return span(A, [A.element(g) for g in obj])


def _require(opts: dict, *keys):
    missing = [k for k in keys if opts.get(k) is None]
    if missing:
        raise ValueError(f"missing options: {missing}")


def _group(cfg: ExperimentConfig) -> PGroup:
    if not cfg.group:
        raise ValueError(f"command {cfg.command!r} needs a group literal")
    return PGroup.parse(cfg.group)


def _cmd_radical(cfg: ExperimentConfig):
    A = _group(cfg)
    rep = radical_report(A, oracle=bool(cfg.options.get("oracle")), index=bool(cfg.options.get("index")))
    code = EXIT_DISAGREE if rep["criterion_agrees_oracle"] is False else EXIT_OK
    return {"group": A.literal, **rep}, code, None


def _cmd_quasiinv(cfg: ExperimentConfig):
    _require(cfg.options, "endo")
    A = PGroup.parse(cfg.group) if cfg.group else None
    x = endo_from_json(cfg.options["endo"], A)
    res = quasi_inverse(x)
    return {
        "group": x.parent.literal,
        "endo": [list(r) for r in x.matrix],
        "exists": res.exists,
        "witness": [list(r) for r in res.witness.matrix] if res.exists else None,
        "radical_member": radical_membership(x),
    }, EXIT_OK, None


def _cmd_tower(cfg: ExperimentConfig):
    opts = cfg.options
    _require(opts, "p", "ks", "stages")
    T = TowerSpec.from_text(int(opts["p"]), str(opts["ks"]), int(opts["stages"]))
    payload = {"group": build_stage(T, T.stages).literal, "p": T.p, "ks": T.label, "stages": T.stages}
    try:
        reports = divergence_report(T)
    except BoundedTower as exc:
        payload.update(regime="bounded: radical closed regime", detail=str(exc), reports=[])
        return payload, EXIT_OK, None
    payload.update(
        regime="unbounded: support grows with the stage",
        supports=[r.quasi_inverse_support for r in reports],
        invariant_ok=all(r.invariant_ok for r in reports),
        reports=reports_to_json(reports),
    )
    csv_text = reports_to_csv(reports)
    if opts.get("csv"):
        write_atomic(opts["csv"], csv_text)
        payload["csv"] = str(opts["csv"])
        return payload, EXIT_OK, None
    if cfg.format == "csv":
        return payload, EXIT_OK, csv_text
    return payload, EXIT_OK, None


def _cmd_topology(cfg: ExperimentConfig):
    A = _group(cfg)
    opts = cfg.options
    _require(opts, "check")
    check = opts["check"]
    e = endo_from_json(opts["e"], A) if opts.get("e") else None
    V = subgroup_from_json(opts["v"], A) if opts.get("v") else None
    payload: dict = {"group": A.literal, "check": check}
    ok = True
    if check == "admissible":
        sweep = admissibility_sweep(A)
        payload.update(sweep)
        ok = sweep["liebert_contained_in_finite"] and all(sweep["socle_intersection_identity"].values())
        nonzero = [a for a in A.elements() if a]
        if e is not None:
            wit = {str(list(a.coords)): witness_nonadmissible_annr(A, e, a) for a in nonzero}
            payload["annr_witnesses"] = {k: (w.to_json()["matrix"] if w else None) for k, w in wit.items()}
        if V is not None:
            wit = {str(list(a.coords)): witness_nonadmissible_pv(A, V, a) for a in nonzero}
            payload["pv_witnesses"] = {k: w.to_json()["matrix"] for k, w in wit.items()}
    elif check == "annl":
        es = [e] if e is not None else [f for f in enumerate_endos(A) if is_idempotent(f)]
        results = {json.dumps([list(r) for r in f.matrix]): annl_identity_check(A, f) for f in es}
        ok = all(results.values())
        payload.update(idempotents_checked=len(es), all_hold=ok, results=results)
    elif check == "pv-ideal":
        if V is not None:
            ok = pv_right_ideal_check(A, V, samples=int(opts.get("samples", 200)), seed=cfg.seed)
            payload.update(v=[list(b.coords) for b in V.basis], samples=int(opts.get("samples", 200)), holds=ok)
        else:
            rep = pv_exhaustive_check(A)
            ok = rep.ok
            payload.update(
                subgroups=rep.subgroups,
                right_ideal=rep.right_ideal,
                monotone=rep.monotone,
                directed=rep.directed,
                hausdorff=rep.hausdorff,
            )
    else:
        raise ValueError(f"unknown topology check {check!r}")
    return payload, EXIT_OK if ok else EXIT_DISAGREE, None


def _cmd_battery(cfg: ExperimentConfig):
    groups = load_battery(cfg.options["battery"]) if cfg.options.get("battery") else None
    if cfg.options.get("inject_fault"):
        def criterion(x):
            return not radical_membership(x)
    else:
        criterion = radical_membership
    results = run_battery(groups, criterion)
    rows = [
        {
            "group": r.group,
            "order_end": r.order_end,
            "order_radical": r.order_radical,
            "agrees": r.agrees,
            "quotient_count_ok": r.quotient_count_ok,
            "passed": r.passed,
            "witness": r.witness,
        }
        for r in results
    ]
    ok = all(r.passed for r in results)
    payload = {"group": ",".join(r.group for r in results), "all_passed": ok, "results": rows}
    return payload, EXIT_OK if ok else EXIT_DISAGREE, None


HANDLERS = {
    "radical": _cmd_radical,
    "quasiinv": _cmd_quasiinv,
    "tower": _cmd_tower,
    "topology": _cmd_topology,
    "oracle-battery": _cmd_battery,
}


def render(cfg: ExperimentConfig, payload: dict) -> str:
    doc = {"tool": "endoring", "version": __version__, "command": cfg.command, "seed": cfg.seed, **payload}
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def run(cfg: ExperimentConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        payload, code, text = HANDLERS[cfg.command](cfg)
        text = text if text is not None else render(cfg, payload)
        if cfg.output:
            write_atomic(cfg.output, text)
        else:
            stdout.write(text)
        return code
    except EnumerationGuardExceeded as exc:
        print(f"error: {exc} (cap {exc.cap})", file=stderr)
        return EXIT_GUARD
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=stderr)
        return EXIT_IO
    except (EndoRingError, ValueError, KeyError, IndexError, TypeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="endoring", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"endoring {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", help="write the output here instead of stdout")
        return p

    p = common(sub.add_parser("radical", help="radical order, nilpotency index, oracle check"))
    p.add_argument("--group", required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--index", action="store_true")

    p = common(sub.add_parser("tower", help="finite-stage divergence experiment"))
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--ks", required=True, help="rule:i+1, rule:2*i+1, rule:3 or a list 1,3,7")
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--csv", help="write the stage table to this CSV file")
    p.add_argument("--format", choices=("json", "csv"), default="csv")

    p = common(sub.add_parser("topology", help="neighbourhood-ideal checks and witnesses"))
    p.add_argument("--group", required=True)
    p.add_argument("--check", required=True, choices=("admissible", "annl", "pv-ideal"))
    p.add_argument("--e", help='idempotent as JSON {"group": ..., "matrix": ...} or a bare matrix')
    p.add_argument("--v", help='subgroup as JSON {"group": ..., "gens": ...} or a bare generator list')
    p.add_argument("--samples", type=int, default=200)

    p = common(sub.add_parser("quasiinv", help="solve x + x' + x x' = 0"))
    p.add_argument("--endo", required=True)
    p.add_argument("--group")

    p = common(sub.add_parser("oracle-battery", help="layer criterion versus brute force"))
    p.add_argument("--battery", help="JSON file listing group literals")
    p.add_argument("--inject-fault", action="store_true", help="negate the criterion (harness self-test)")

    p = sub.add_parser("run", help="run an ExperimentConfig JSON file")
    p.add_argument("--config", required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> ExperimentConfig:
    if ns.command == "run":
        return ExperimentConfig.load(ns.config)
    opts: dict = {}
    group = getattr(ns, "group", None)
    fmt = "json"
    if ns.command == "radical":
        opts = {"oracle": ns.oracle, "index": ns.index}
    elif ns.command == "tower":
        opts = {"p": ns.p, "ks": ns.ks, "stages": ns.stages, "csv": ns.csv}
        fmt = ns.format
    elif ns.command == "topology":
        opts = {"check": ns.check, "e": ns.e, "v": ns.v, "samples": ns.samples}
    elif ns.command == "quasiinv":
        opts = {"endo": ns.endo}
    elif ns.command == "oracle-battery":
        opts = {"battery": ns.battery, "inject_fault": ns.inject_fault}
    return ExperimentConfig(ns.command, group, opts, ns.out, fmt, ns.seed)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except OSError as exc:
        print(f"error: I/O failure: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
