#!/usr/bin/env python3
"""Operator norm of the truncated right inverse versus truncation degree.

The largest singular value is monotone in the degree and saturates at
1/sqrt(8n) (attained on constant data), so the table converges fast.
"""

import argparse
import math

from gauss_rinv.rightinverse import operator_norm


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-degree", type=int, default=16)
    parser.add_argument("--dims", default="1,2", help="comma-separated dimensions")
    args = parser.parse_args()

    dims = [int(d) for d in args.dims.split(",")]
    print(f"{'N':>4}" + "".join(f"  n={n:<14}" for n in dims))
    for degree in range(0, args.max_degree + 1, 2):
        row = [f"{degree:>4}"]
        for n in dims:
            row.append(f"  {operator_norm(n, 0, degree):.12f}")
        print("".join(row))
    print("limit" + "".join(f" {1.0 / math.sqrt(8.0 * n):.12f}" for n in dims))


if __name__ == "__main__":
    main()
