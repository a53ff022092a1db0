"""Rebuild the three-piece configuration (P = [[2,-1],[1,2]], Q = I) and write its certificate and picture."""
import argparse
import json
from pathlib import Path

from gaborlca import euclid_r2 as r2

GIVEN = [(-1, 1), (0, 0), (1, -1)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--outdir", default="out")
    args = ap.parse_args()
    out = Path(args.outdir)
    out.mkdir(parents=True, exist_ok=True)

    P, Q = r2.RationalMatrix2.of([[2, -1], [1, 2]]), r2.RationalMatrix2.identity()
    for tag, ys in (("given", GIVEN), ("search", None)):
        cert = r2.assemble_certificate(P, Q, 2, ys=ys)
        rep = r2.validate_numeric(cert)
        (out / f"three_pieces_{tag}.json").write_text(json.dumps({"certificate": cert.to_json(), "numeric": rep.to_json()}, indent=2))
        (out / f"three_pieces_{tag}.svg").write_text(r2.certificate_svg(cert))
        areas = ", ".join(str(p.K.area()) for p in cert.pieces)
        print(f"{tag:>6}: a1={[str(x) for x in cert.a1]} Z={cert.Z} areas=[{areas}] "
              f"y={[p.y for p in cert.pieces]} valid={cert.valid} numeric_ok={rep.ok} "
              f"max_off={rep.max_off_identity:.2e}")


if __name__ == "__main__":
    main()
