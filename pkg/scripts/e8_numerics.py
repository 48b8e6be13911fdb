"""Rank-8 numerics: automorphism order, Hurwitz comparison, rational splitting."""

from __future__ import annotations

import json
import time

from intlattice.polarization import weyl_vs_hurwitz
from intlattice.quadratic_forms import decompose, e8_gram, rational_splitting, short_vectors


def main() -> None:
    q = e8_gram()
    start = time.perf_counter()
    report = weyl_vs_hurwitz()
    report["seconds"] = f"{time.perf_counter() - start:.2f}"
    report["roots"] = str(2 * len(short_vectors(q, 2)))
    report["indecomposable"] = decompose(q).ranks == (8,)
    gamma = rational_splitting(q, 16)
    report["rational_splitting_denominator"] = str(gamma.max_denominator()) if gamma is not None else "none"
    print(json.dumps(report, indent=2, sort_keys=True))


if __name__ == "__main__":
    main()
