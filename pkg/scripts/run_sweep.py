"""Exhaustive theorem sweep over several groups; prints one summary line per group."""
import argparse
import json
import time
from dataclasses import dataclass, field

from gaborlca.cli import main as cli_main


@dataclass
class SweepConfig:
    groups: list = field(default_factory=lambda: ["2", "3", "4", "2,2", "5", "6"])
    samples: int = 5
    seed: int = 0
    workers: int = 4
    outdir: str = "out"


def run(cfg: SweepConfig):
    import os
    os.makedirs(cfg.outdir, exist_ok=True)
    bad = 0
    for g in cfg.groups:
        path = os.path.join(cfg.outdir, f"sweep_{g.replace(',', 'x')}.json")
        t0 = time.perf_counter()
        code = cli_main(["sweep", g, "--samples", str(cfg.samples), "--seed", str(cfg.seed),
                         "--workers", str(cfg.workers), "--out", path])
        with open(path) as fh:
            d = json.load(fh)
        bad += code != 0
        checked = sum(v["checked"] for v in d["per_theorem"].values())
        print(f"Z{g:<5} subgroups={d['subgroups']:>4} checks={checked:>6} violations={d['violations']} "
              f"({time.perf_counter() - t0:.1f}s)")
    return bad


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("groups", nargs="*")
    ap.add_argument("--samples", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--workers", type=int, default=4)
    ap.add_argument("--outdir", default="out")
    a = ap.parse_args()
    cfg = SweepConfig(a.groups or SweepConfig().groups, a.samples, a.seed, a.workers, a.outdir)
    raise SystemExit(1 if run(cfg) else 0)
