"""Tight-frame certificates on R^2 for a range of volumes |det(PQ)|, with timings."""
import argparse
import time
from dataclasses import dataclass
from fractions import Fraction

from gaborlca import euclid_r2 as r2


@dataclass
class Config:
    volumes: tuple = (Fraction(1, 2), Fraction(1), Fraction(3), Fraction(10))
    s: int = 2
    beta_range: int = 3
    m_range: int = 3


def run(cfg: Config):
    for v in cfg.volumes:
        t0 = time.perf_counter()
        cert = r2.assemble_certificate(r2.RationalMatrix2.diag(v, 1), r2.RationalMatrix2.identity(), cfg.s)
        t1 = time.perf_counter()
        rep = r2.validate_numeric(cert, cfg.beta_range, cfg.m_range)
        t2 = time.perf_counter()
        print(f"vol={str(v):>5} pieces={len(cert.pieces):>2} valid={cert.valid} numeric_ok={rep.ok} "
              f"max_off={rep.max_off_identity:.1e} build={t1 - t0:.2f}s validate={t2 - t1:.2f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--volumes", default="1/2,1,3,10")
    ap.add_argument("--s", type=int, default=2)
    a = ap.parse_args()
    run(Config(tuple(Fraction(x) for x in a.volumes.split(",")), a.s))
