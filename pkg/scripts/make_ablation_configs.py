#!/usr/bin/env python3
"""
Write the ablation matrix as experiment configs.
Run: python scripts/make_ablation_configs.py --dataset ../data/sbm_2x100
"""

import argparse
import json
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "backend"))

from apps.cli import ablation_matrix  # noqa: E402


def main():
    parser = argparse.ArgumentParser(description="Generate ablation configs for lrgae")
    parser.add_argument("--dataset", required=True, help="Dataset directory the configs point at")
    parser.add_argument("--task", default="node_classification",
                        choices=["node_classification", "link_prediction", "clustering"])
    parser.add_argument("--epochs", type=int, default=500)
    parser.add_argument("--seeds", type=int, default=10, help="Seeds 0..N-1 per config")
    parser.add_argument("--output", "-o", default="data/configs/ablation",
                        help="Directory for generated configs")
    parser.add_argument("--force", "-f", action="store_true",
                        help="Overwrite existing files")

    args = parser.parse_args()

    out_dir = Path(args.output)
    out_dir.mkdir(parents=True, exist_ok=True)

    written, skipped = 0, 0
    for stem, config in ablation_matrix(args.dataset, args.task, args.epochs, list(range(args.seeds))):
        target = out_dir / f"{stem}.json"
        if target.exists() and not args.force:
            skipped += 1
            continue
        with open(target, "w") as f:
            json.dump(config, f, indent=2)
        written += 1

    print(f"✅ Wrote {written} configs to {out_dir}")
    if skipped:
        print(f"⚠️  Skipped {skipped} existing files. Use --force to overwrite.")


if __name__ == "__main__":
    main()
