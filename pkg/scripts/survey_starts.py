"""Measure how many sign orbits the search finds as the start budget grows.

Usage: python scripts/survey_starts.py

For each gallery operator, runs enumerate_triples with an increasing
number of random starts and prints the orbit count, the largest tau, and
the wall time. Useful for picking a starts budget that saturates the
spectrum of a new operator: the count plateaus once every basin (and
every saddle reachable by the Newton corrector) has been hit.
"""

from __future__ import annotations

import sys
import time

from bilop import SearchConfig, enumerate_triples, gallery


def main() -> int:
    budgets = [16, 32, 64, 128, 256, 512, 1024]
    builders = [
        gallery.diagonal_pair,
        gallery.overlapping_slices,
        gallery.orthonormal_triad,
        gallery.signed_diagonal,
    ]
    for build in builders:
        T = build()
        print(f"{T.name} (dims {T.dims[0]}x{T.dims[1]}x{T.dims[2]}):")
        for starts in budgets:
            t0 = time.perf_counter()
            spectrum = enumerate_triples(T, SearchConfig(starts=starts))
            dt = time.perf_counter() - t0
            top = spectrum.triples[0].tau if spectrum.triples else float("nan")
            print(
                f"  starts {starts:5d}: {len(spectrum.triples):3d} orbits, "
                f"top tau {top:.12f}, {dt:6.2f}s"
            )
    return 0


if __name__ == "__main__":
    sys.exit(main())
