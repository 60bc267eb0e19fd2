"""Print c_mu for every function of a given size, one row per function."""

import argparse

from csf.coefficients import all_coefficients
from csf.order import enumerate_hessenberg
from csf.symfunc import partitions


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("n", type=int)
    ap.add_argument("--bounce", type=int, default=3, choices=[1, 2, 3])
    args = ap.parse_args()

    mus = list(partitions(args.n, max_len=3))
    header = ["f"] + [",".join(map(str, mu)) for mu in mus]
    print("\t".join(header))
    for f in enumerate_hessenberg(args.n, args.bounce):
        c = all_coefficients(f)
        print("\t".join([str(f)] + [str(c[mu]) for mu in mus]))


if __name__ == "__main__":
    main()
