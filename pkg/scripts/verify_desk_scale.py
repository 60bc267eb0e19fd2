"""Certify every bounce-3 function up to n = 8 and write the certificates to disk."""

import argparse
import json
from pathlib import Path

from csf.verifier import verify_range


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--bounce", type=int, default=3)
    ap.add_argument("--out", type=Path, default=Path("certificates.json"))
    args = ap.parse_args()

    summary = verify_range(args.n, bounce_filter=args.bounce)
    data = {"summary": summary.to_json(), "certificates": [c.to_json() for c in summary.certificates]}
    args.out.write_text(json.dumps(data, indent=2) + "\n")
    print(summary.table())
    for cert in summary.failures:
        print("FAILED", cert.f)
    raise SystemExit(1 if summary.failures else 0)


if __name__ == "__main__":
    main()
