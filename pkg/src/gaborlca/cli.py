"""Command line front end.

Exit codes: 0 success, 1 a verdict came out false, 2 bad usage or input.
"""
from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import duality_suite as ds
from . import euclid_r2 as r2
from . import s0_appendix as s0
from .gabor_ops import NotAFrame, canonical_dual, canonical_tight, spectral_report
from .group_core import GroupSpec, SpecMismatch, Window
from .phase_space import PhasePoint
from .subgroup_lattice import (
    CapExceeded,
    PhaseSubgroup,
    adjoint,
    all_subgroups,
    annihilator,
    full_subgroup,
    phi,
    trivial_subgroup,
    volume,
)

VERIFY_TAGS = ("wexler-raz", "janssen", "figa", "bessel-duality", "duality-principle", "density", "s0")
MAX_CAP = 4096


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    tolerance: float = 1e-9
    seed: int = 0
    cap: int = 256
    out: str | None = None
    svg: str | None = None
    args: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.tolerance > 0:
            raise UsageError("--tolerance must be positive")
        if not 0 < self.cap <= MAX_CAP:
            raise UsageError(f"--cap must lie in 1..{MAX_CAP}")


# -- input parsing ---------------------------------------------------------------

def parse_orders(text: str) -> GroupSpec:
    try:
        orders = tuple(int(t) for t in text.replace("x", ",").split(",") if t.strip())
    except ValueError as exc:
        raise UsageError(f"cannot read group orders from {text!r}") from exc
    if not orders:
        raise UsageError("empty group")
    return GroupSpec(orders)


def _load_json(text: str):
    text = text.strip()
    if text.startswith("{") or text.startswith("["):
        return json.loads(text)
    return json.loads(Path(text).read_text())


def parse_subgroup(text: str, spec: GroupSpec | None) -> PhaseSubgroup:
    if text in ("full", "trivial"):
        if spec is None:
            raise UsageError(f"subgroup {text!r} needs --group")
        return full_subgroup(spec) if text == "full" else trivial_subgroup(spec)
    return PhaseSubgroup.from_json(_load_json(text))


def parse_window(text: str, spec: GroupSpec | None, rng: np.random.Generator) -> Window:
    if text in ("delta", "random"):
        if spec is None:
            raise UsageError(f"window {text!r} needs a group")
        return Window.delta(spec) if text == "delta" else Window.random(spec, rng)
    return Window.from_json(_load_json(text))


def parse_matrix(text: str) -> r2.RationalMatrix2:
    rows = [r.split(",") for r in text.split(";")]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise UsageError(f"expected a 2x2 matrix like '2,-1;1,2', got {text!r}")
    return r2.RationalMatrix2.of([[Fraction(x.strip()) for x in r] for r in rows])


def _context(cfg: RunConfig):
    a = cfg.args
    rng = np.random.default_rng(cfg.seed)
    spec = parse_orders(a["group"]) if a.get("group") else None
    delta = None
    if a.get("subgroup"):
        delta = parse_subgroup(a["subgroup"], spec)
        spec = spec or delta.spec
    g = parse_window(a.get("window") or "random", spec, rng) if (spec or a.get("window")) else None
    if g is not None:
        spec = spec or g.spec
        if delta is not None and delta.spec != g.spec:
            raise SpecMismatch(f"window on {g.spec}, subgroup on {delta.spec}")
    return spec, delta, g, rng


# -- commands ---------------------------------------------------------------------

def cmd_group(cfg):
    spec = parse_orders(cfg.args["orders"])
    if spec.order > cfg.cap:
        raise CapExceeded(f"|G| = {spec.order} exceeds --cap {cfg.cap}")
    return 0, {
        "orders": list(spec.orders),
        "order": spec.order,
        "exponent": spec.exponent,
        "elements": spec.residues.tolist(),
        "character_phases": {"denominator": spec.exponent, "numerators": spec.phase_numerators.tolist()},
    }


def cmd_subgroups(cfg):
    spec = parse_orders(cfg.args["orders"])
    subs = all_subgroups(spec, cap=cfg.cap)
    return 0, {
        "orders": list(spec.orders),
        "count": len(subs),
        "subgroups": [dict(d.to_json(), volume=str(volume(d))) for d in subs],
    }


def cmd_adjoint(cfg):
    spec, delta, _, _ = _context(cfg)
    if delta is None:
        raise UsageError("adjoint needs --subgroup")
    adj = adjoint(delta)
    ann = annihilator(delta)
    return 0, {
        "subgroup": delta.to_json(),
        "volume": str(volume(delta)),
        "adjoint": adj.to_json_elements(),
        "adjoint_volume": str(volume(adj)),
        "annihilator_matches": phi(adj).same_points(ann),
    }


def cmd_volume(cfg):
    _, delta, _, _ = _context(cfg)
    if delta is None:
        raise UsageError("volume needs --subgroup")
    return 0, {"order": len(delta), "weight": str(delta.weight), "volume": str(volume(delta)),
               "adjoint_volume": str(volume(adjoint(delta)))}


def _need(delta, g):
    if delta is None or g is None:
        raise UsageError("this command needs --subgroup (and optionally --window)")


def cmd_frame_report(cfg):
    _, delta, g, _ = _context(cfg)
    _need(delta, g)
    rep = spectral_report(g, delta, cfg.tolerance)
    return (0 if rep.is_frame else 1), dict(rep.to_json(), volume=str(volume(delta)))


def _window_cmd(cfg, make):
    _, delta, g, _ = _context(cfg)
    _need(delta, g)
    try:
        return 0, {"window": make(g, delta, cfg.tolerance).to_json()}
    except NotAFrame as exc:
        return 1, {"window": None, "error": str(exc)}


def cmd_dual_window(cfg):
    return _window_cmd(cfg, canonical_dual)


def cmd_tight_window(cfg):
    return _window_cmd(cfg, canonical_tight)


def _verify_one(tag, spec, delta, g, h, rng, tol):
    if tag == "s0":
        f, f2, g2, g0 = (Window.random(spec, rng) for _ in range(4))
        nu = PhasePoint.from_code(spec, int(rng.integers(spec.order**2)))
        return [
            s0.lemma_a1_check(f, g, nu, f2, g2),
            s0.prop_a2_check(f, g),
            s0.thm_a3_bound_check(f, f2, g0, g, g2),
        ]
    if delta is None:
        raise UsageError(f"verify {tag} needs --subgroup")
    if tag == "wexler-raz":
        return [ds.wexler_raz_check(g, h, delta, tol)]
    if tag == "janssen":
        return [ds.janssen_check(g, h, delta)]
    if tag == "figa":
        f1, f2 = Window.random(spec, rng), Window.random(spec, rng)
        return [ds.figa_check(f1, f2, g, h, delta)]
    if tag == "bessel-duality":
        return [ds.bessel_duality_check(g, delta, tol)]
    if tag == "duality-principle":
        return [ds.duality_principle_check(g, delta, tol)]
    if tag == "density":
        return [ds.density_verdict(g, delta, tol, strict=False)]
    raise UsageError(f"unknown theorem tag {tag!r}; expected one of {', '.join(VERIFY_TAGS)}")


def cmd_verify(cfg):
    tags = cfg.args["theorems"]
    bad = [t for t in tags if t not in VERIFY_TAGS and t != "all"]
    if bad:
        raise UsageError(f"unknown theorem tag {bad[0]!r}; expected one of {', '.join(VERIFY_TAGS)}")
    if "all" in tags:
        tags = list(VERIFY_TAGS)
    spec, delta, g, rng = _context(cfg)
    if g is None:
        raise UsageError("verify needs --group, --subgroup or --window")
    if cfg.args.get("dual"):
        h = parse_window(cfg.args["dual"], spec, rng)
    elif delta is not None:
        h = ds.canonical_dual_or_none(g, delta, cfg.tolerance) or Window.random(spec, rng)
    else:
        h = None
    reports = []
    for tag in tags:
        reports.extend(_verify_one(tag, spec, delta, g, h, rng, cfg.tolerance))
    ok = all(r.verdict for r in reports)
    return (0 if ok else 1), {"reports": [r.to_json() for r in reports], "all_verdicts": ok}


def sweep_subgroup(spec: GroupSpec, index: int, delta: PhaseSubgroup, samples: int, seed: int, tol: float) -> dict:
    """All theorem checks on one subgroup; the random stream depends only on (seed, index)."""
    rng = np.random.default_rng([seed, index])
    counts: dict[str, list[int]] = {}
    failures = []

    def record(rep):
        c = counts.setdefault(rep.theorem_id, [0, 0])
        c[0] += 1
        if rep.verdict:
            c[1] += 1
        else:
            failures.append({"subgroup": index, "report": rep.to_json()})

    for _ in range(samples):
        g, h, f1, f2 = (Window.random(spec, rng) for _ in range(4))
        record(ds.wexler_raz_check(g, h, delta, tol))
        record(ds.janssen_check(g, h, delta))
        record(ds.figa_check(f1, f2, g, h, delta))
        record(ds.bessel_duality_check(g, delta, tol))
        record(ds.duality_principle_check(g, delta, tol))
        record(ds.density_verdict(g, delta, tol, strict=False))
        record(ds.tight_orthogonality_check(g, delta))
        hd = ds.canonical_dual_or_none(g, delta, tol)
        if hd is not None:
            record(ds.wexler_raz_check(g, hd, delta, tol))
            record(ds.dual_pair_bounds_check(g, hd, delta, tol))
    return {"counts": counts, "failures": failures}


def cmd_sweep(cfg):
    spec = parse_orders(cfg.args["orders"])
    samples = int(cfg.args.get("samples") or 3)
    if samples < 1:
        raise UsageError("--samples must be positive")
    subs = all_subgroups(spec, cap=cfg.cap)
    jobs = [(spec, i, d, samples, cfg.seed, cfg.tolerance) for i, d in enumerate(subs)]
    workers = int(cfg.args.get("workers") or 1)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(sweep_subgroup, *zip(*jobs)))
    else:
        results = [sweep_subgroup(*j) for j in jobs]
    totals: dict[str, dict[str, int]] = {}
    failures = []
    for res in results:                       # canonical subgroup order
        for tid, (n, ok) in res["counts"].items():
            t = totals.setdefault(tid, {"checked": 0, "passed": 0, "failed": 0})
            t["checked"] += n
            t["passed"] += ok
            t["failed"] += n - ok
        failures.extend(res["failures"])
    violations = sum(t["failed"] for t in totals.values())
    return (0 if violations == 0 else 1), {
        "orders": list(spec.orders),
        "subgroups": len(subs),
        "samples_per_subgroup": samples,
        "per_theorem": dict(sorted(totals.items())),
        "violations": violations,
        "failures": failures[:20],
    }


def cmd_construct_r2(cfg):
    a = cfg.args
    P = parse_matrix(a["P"])
    Q = parse_matrix(a.get("Q") or "1,0;0,1")
    ys = None
    if a.get("y"):
        ys = [tuple(int(c) for c in part.split(",")) for part in a["y"].split(";")]
    cert = r2.assemble_certificate(P, Q, int(a.get("s", 2)), ys=ys)
    report = r2.validate_numeric(cert, int(a.get("beta_range", 3)), int(a.get("m_range", 3)))
    if cfg.svg:
        Path(cfg.svg).write_text(r2.certificate_svg(cert))
    ok = cert.valid and report.ok
    return (0 if ok else 1), {"certificate": cert.to_json(), "numeric": report.to_json()}


def cmd_validate_r2(cfg):
    a = cfg.args
    data = _load_json(a["certificate"])
    # accept both a bare certificate and the full construct-r2 output
    cert = r2.TightFrameCertificateR2.from_json(data.get("certificate", data))
    checks = r2.verify_certificate(cert)
    cert.checks = {k: checks[k] for k in ("partition_ok", "integral_translates_ok", "translates_disjoint_ok")}
    report = r2.validate_numeric(cert, int(a.get("beta_range", 3)), int(a.get("m_range", 3)))
    ok = all(checks.values()) and report.ok
    return (0 if ok else 1), {"checks": checks, "numeric": report.to_json(), "valid": ok}


COMMANDS = {
    "group": cmd_group,
    "subgroups": cmd_subgroups,
    "adjoint": cmd_adjoint,
    "volume": cmd_volume,
    "frame-report": cmd_frame_report,
    "dual-window": cmd_dual_window,
    "tight-window": cmd_tight_window,
    "verify": cmd_verify,
    "sweep": cmd_sweep,
    "construct-r2": cmd_construct_r2,
    "validate-r2": cmd_validate_r2,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--tolerance", type=float, default=1e-9)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=256, help="limit on |G|^2 for enumeration")
    common.add_argument("--out", help="write JSON here instead of stdout")

    p = _Parser(prog="gaborlca", description="Gabor systems on finite abelian groups")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    for name in ("group", "subgroups"):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("orders", help="cyclic orders, e.g. 2,4")

    def system(name, window=True):
        s = sub.add_parser(name, parents=[common])
        s.add_argument("--group", help="cyclic orders, needed for named subgroups/windows")
        s.add_argument("--subgroup", help="JSON file, inline JSON, 'full' or 'trivial'")
        if window:
            s.add_argument("--window", help="JSON file, inline JSON, 'delta' or 'random' (default)")
        return s

    system("adjoint", window=False)
    system("volume", window=False)
    for name in ("frame-report", "dual-window", "tight-window"):
        system(name)
    v = system("verify")
    v.add_argument("theorems", nargs="+", help=" | ".join(VERIFY_TAGS + ("all",)))
    v.add_argument("--dual", help="second window h (default: canonical dual if it exists, else random)")

    s = sub.add_parser("sweep", parents=[common])
    s.add_argument("orders")
    s.add_argument("--samples", type=int, default=3)
    s.add_argument("--workers", type=int, default=1)

    c = sub.add_parser("construct-r2", parents=[common])
    c.add_argument("--P", required=True, help="rows separated by ';', e.g. '2,-1;1,2'")
    c.add_argument("--Q", default="1,0;0,1")
    c.add_argument("--s", type=int, default=2, choices=(0, 1, 2))
    c.add_argument("--y", help="translates, e.g. '-1,1;0,0;1,-1' (default: search)")
    c.add_argument("--beta-range", type=int, default=3)
    c.add_argument("--m-range", type=int, default=3)
    c.add_argument("--svg", help="write a picture of the pieces")

    val = sub.add_parser("validate-r2", parents=[common])
    val.add_argument("certificate", help="certificate JSON (as written by construct-r2)")
    val.add_argument("--beta-range", type=int, default=3)
    val.add_argument("--m-range", type=int, default=3)
    return p


def _emit(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        extras = {k: v for k, v in vars(ns).items() if k not in ("command", "tolerance", "seed", "cap", "out", "svg")}
        cfg = RunConfig(ns.command, ns.tolerance, ns.seed, ns.cap, ns.out, getattr(ns, "svg", None), extras)
        code, payload = COMMANDS[cfg.command](cfg)
    except (UsageError, CapExceeded, SpecMismatch, s0.SizeCapExceeded, r2.GeometryError,
            ValueError, KeyError, TypeError, OSError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except r2.TranslateSearchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    payload = {"command": cfg.command, "seed": cfg.seed, "tolerance": cfg.tolerance, **payload}
    _emit(payload, cfg.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
