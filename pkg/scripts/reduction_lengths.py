"""Distribution of move-word lengths returned by vector_reduce on random inputs."""

from __future__ import annotations

import argparse
import json
import random
from collections import Counter
from dataclasses import asdict, dataclass, field

import numpy as np

from unicellular.symplectic import apply_move_word, basis_vector, random_reducible_vector, vector_reduce


@dataclass
class ReductionConfig:
    samples: int = 1000
    bound: int = 50
    genera: list[int] = field(default_factory=lambda: [2, 3, 4])
    seed: int = 0
    out: str | None = None


def run(cfg: ReductionConfig) -> dict:
    rng = random.Random(cfg.seed)
    lengths: dict[int, list[int]] = {g: [] for g in cfg.genera}
    for _ in range(cfg.samples):
        g = rng.choice(cfg.genera)
        v = random_reducible_vector(g, cfg.bound, rng)
        word = vector_reduce(v, g)
        assert apply_move_word(word, v) == basis_vector(g, "x1")
        lengths[g].append(len(word))
    summary = {}
    for g, ls in lengths.items():
        a = np.array(ls)
        summary[g] = {
            "count": len(ls),
            "mean": round(float(a.mean()), 2) if len(ls) else None,
            "p95": int(np.percentile(a, 95)) if len(ls) else None,
            "max": int(a.max()) if len(ls) else None,
            "histogram": dict(sorted(Counter(ls).items())),
        }
        print(f"g={g}: n={len(ls)} mean={summary[g]['mean']} p95={summary[g]['p95']} max={summary[g]['max']}")
    return summary


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    d = ReductionConfig()
    p.add_argument("--samples", type=int, default=d.samples)
    p.add_argument("--bound", type=int, default=d.bound)
    p.add_argument("--genera", type=lambda s: [int(t) for t in s.split(",")], default=d.genera)
    p.add_argument("--seed", type=int, default=d.seed)
    p.add_argument("--out")
    cfg = ReductionConfig(**vars(p.parse_args()))
    summary = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "lengths": summary}, fh, indent=2)


if __name__ == "__main__":
    main()
