"""Write the gallery tensors (and the triples of one of them) as JSON files.

Usage: python scripts/make_tensors.py [OUTDIR]

Produces the inputs the CLI examples in the README operate on:
diagonal_pair.json, overlapping_slices.json, orthonormal_triad.json,
signed_diagonal.json, and diagonal_pair_triples.json (the known triples
of the diagonal-pair operator, for `bilop verify`).
"""

from __future__ import annotations

import json
import pathlib
import sys

import numpy as np

from bilop import SearchConfig, enumerate_triples, gallery, tensor_to_json_dict


def main() -> int:
    outdir = pathlib.Path(sys.argv[1]) if len(sys.argv) > 1 else pathlib.Path("tensors")
    outdir.mkdir(parents=True, exist_ok=True)
    builders = {
        "diagonal_pair": gallery.diagonal_pair,
        "overlapping_slices": gallery.overlapping_slices,
        "orthonormal_triad": gallery.orthonormal_triad,
        "signed_diagonal": gallery.signed_diagonal,
    }
    for stem, build in builders.items():
        T = build()
        path = outdir / f"{stem}.json"
        path.write_text(json.dumps(tensor_to_json_dict(T), indent=2) + "\n")
        print(f"wrote {path}")

    T = gallery.diagonal_pair()
    spectrum = enumerate_triples(T, SearchConfig(starts=256))
    triples = {
        "triples": [
            {
                "tau": tr.tau,
                "x": [float(v) for v in tr.x],
                "y": [float(v) for v in tr.y],
                "z": [float(v) for v in tr.z],
            }
            for tr in spectrum.triples
        ]
    }
    path = outdir / "diagonal_pair_triples.json"
    path.write_text(json.dumps(triples, indent=2) + "\n")
    print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
