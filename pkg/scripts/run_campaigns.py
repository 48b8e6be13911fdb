"""Seeded soundness campaigns for every lemma kind; writes one JSON summary."""

from __future__ import annotations

import argparse
import json
import time
from pathlib import Path

from intlattice.lemma_engine import KINDS, CampaignConfig, run_campaign


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--kinds", nargs="+", default=list(KINDS), choices=KINDS)
    p.add_argument("--count", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", type=Path, default=Path("results/campaigns.json"))
    args = p.parse_args()

    summaries = []
    for kind in args.kinds:
        start = time.perf_counter()
        res = run_campaign(CampaignConfig(kind, count=args.count, seed=args.seed))
        s = res.summary()
        s["seconds"] = f"{time.perf_counter() - start:.1f}"
        summaries.append(s)
        print(f"{kind:20s} hypotheses {s['hypotheses_held']}/{s['count']}  "
              f"conclusions {s['conclusions_held']}/{s['count']}  sound={s['sound']}  {s['seconds']}s")
    args.out.parent.mkdir(parents=True, exist_ok=True)
    args.out.write_text(json.dumps(summaries, indent=2, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
