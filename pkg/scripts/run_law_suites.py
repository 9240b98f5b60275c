"""Run the randomized law suites and write their JSON summaries.

    python3 scripts/run_law_suites.py --out results/
    python3 scripts/run_law_suites.py --seed 3 --cases 500

Also evaluates both counterexamples and the non-monic interchange run,
which is expected to report failures.
"""
import argparse
import json
import time
from dataclasses import asdict
from pathlib import Path

from spancospan import laws
from spancospan.laws import SuiteConfig


def configs(seed: int, cases: int) -> list[SuiteConfig]:
    return [
        SuiteConfig("interchange", seed, cases, 4),
        SuiteConfig("interchange", seed, cases, 4, allow_nonmonic=True),
        SuiteConfig("adhesive", seed, cases, 5),
        SuiteConfig("coherence", seed, cases // 2 or 1, 3),
    ]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--cases", type=int, default=200)
    parser.add_argument("--out", type=Path, help="directory for JSON summaries")
    args = parser.parse_args()

    s = laws.set_counterexample()
    b = laws.bool_counterexample()
    print(f"set counterexample: lhs={s.lhs_size} rhs={s.rhs_size}")
    print(f"bool counterexample: lhs={int(b.lhs)} rhs={int(b.rhs)}")

    results = []
    for config in configs(args.seed, args.cases):
        start = time.perf_counter()
        report = laws.run_suite(config)
        secs = time.perf_counter() - start
        print(f"{report.text().splitlines()[0]} nonmonic={config.allow_nonmonic} time={secs:.2f}s")
        results.append({"config": asdict(config), "seconds": round(secs, 3), **report.to_dict()})

    if args.out:
        args.out.mkdir(parents=True, exist_ok=True)
        for r in results:
            tag = r["suite"] + ("_nonmonic" if r["config"]["allow_nonmonic"] else "")
            (args.out / f"{tag}.json").write_text(json.dumps(r, indent=2, sort_keys=True) + "\n")
        print(f"wrote {len(results)} summaries to {args.out}")


if __name__ == "__main__":
    main()
