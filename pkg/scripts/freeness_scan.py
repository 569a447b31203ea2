#!/usr/bin/env python3
"""Scan Bott-Samelson words and tabulate freeness of Hochschild homology.

For every word over the simple indices of GL_n up to a given length,
compute the bigraded dimensions up to the cutoff, run the freeness check,
and print the fiber polynomial with its total dimension at a = q = 1
(which counts 2^n per indecomposable summand).

Usage: python scripts/freeness_scan.py [n] [max_len] [q_cutoff]
"""

import sys
import time
from itertools import product

from soergelhh.groundring import series_to_str
from soergelhh.koszul import freeness_check, hochschild_dims, series_from_table
from soergelhh.soergel import build_bs


def main() -> int:
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 3
    max_len = int(sys.argv[2]) if len(sys.argv) > 2 else 3
    cutoff = int(sys.argv[3]) if len(sys.argv) > 3 else 12
    words = [()]
    for length in range(1, max_len + 1):
        words.extend(product(range(1, n), repeat=length))
    print(f"{len(words)} words over GL_{n}, cutoff q^{cutoff}")
    ok = True
    for w in words:
        t0 = time.time()
        table = hochschild_dims(build_bs(w, n), 2 * cutoff)
        report = freeness_check(series_from_table(table), n)
        fiber, _ = report.fiber.normalize()
        print(
            f"{str(list(w)):16} free={report.free!s:5} dim(fiber)={report.fiber_at_one:4}"
            f"  fiber={series_to_str(fiber)}  [{time.time() - t0:.1f}s]"
        )
        ok = ok and report.free
    print("all free" if ok else "NOT all free")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
