"""Tabulate the two-transvection family ``nG ⊊ H`` for all ``k | n ≤ N``."""

from __future__ import annotations

import argparse

from intlattice.lemma_engine import check_marcucci, marcucci_counterexample


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=30)
    args = p.parse_args()
    print(f"{'n':>3} {'k':>3} {'n1':>3} {'n2':>3} {'|H/nG|':>7}  weak  blocking")
    for n in range(2, args.max_n + 1):
        for k in range(2, n + 1):
            if n % k:
                continue
            inst = marcucci_counterexample(n, k)
            weak = check_marcucci(inst)
            strong = check_marcucci(inst, improved=True)
            d = weak.details
            print(f"{n:>3} {k:>3} {d['n1']:>3} {d['n2']:>3} {d['quotient_order']:>7}  "
                  f"{'ok' if weak.hypotheses_hold else 'FAIL':4s}  {', '.join(strong.failing_hypotheses)}")


if __name__ == "__main__":
    main()
