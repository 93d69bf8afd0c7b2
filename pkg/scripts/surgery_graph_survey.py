"""Build every feasible surgery graph at small genus and tabulate its metrics.

    python3 scripts/surgery_graph_survey.py --max-genus 2 --out survey.json
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass

from unicellular.coding import InfeasibleError
from unicellular.surgery import DIAMETER_CONSTANT, build_surgery_graph, graph_metrics


@dataclass
class SurveyConfig:
    max_genus: int = 2
    max_length: int = 16
    even_only: bool = False
    threads: int = 1
    trivalent_bfs: bool = True
    out: str | None = None


def partitions(total: int, parts: int, smallest: int, step: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(smallest, total // parts + 1, step):
        for rest in partitions(total - first, parts - 1, first, step):
            yield (first,) + rest


def cases(cfg: SurveyConfig):
    for g in range(1, cfg.max_genus + 1):
        v = 1
        while 2 * v + 4 * g - 2 <= cfg.max_length:
            step, low = (2, 2) if cfg.even_only else (1, 2)
            for d in partitions(2 * v + 4 * g - 2, v, low, step):
                yield g, d, "full"
            v += 1
        if cfg.trivalent_bfs and 6 * (2 * g - 1) > cfg.max_length:
            yield g, (3,) * (4 * g - 2), "bfs"


def run(cfg: SurveyConfig) -> list[dict]:
    rows = []
    for g, d, mode in cases(cfg):
        start = time.perf_counter()
        try:
            graph = build_surgery_graph(g, d, mode, threads=cfg.threads)
        except InfeasibleError as exc:
            rows.append({"genus": g, "degrees": list(d), "mode": mode, "skipped": str(exc)})
            continue
        m = graph_metrics(graph)
        rows.append({
            "genus": g, "degrees": list(d), "mode": mode, **m,
            "within_bound": max(m["diameters"], default=0) <= DIAMETER_CONSTANT * g * g,
            "seconds": round(time.perf_counter() - start, 2),
        })
        r = rows[-1]
        print(f"g={g} d={d} {mode:4s} nodes={r['nodes']:4d} edges={r['edges']:5d} "
              f"components={r['components']} diameters={r['diameters']} ({r['seconds']}s)")
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SurveyConfig()
    p.add_argument("--max-genus", type=int, default=defaults.max_genus)
    p.add_argument("--max-length", type=int, default=defaults.max_length)
    p.add_argument("--even-only", action="store_true")
    p.add_argument("--threads", type=int, default=defaults.threads)
    p.add_argument("--no-trivalent-bfs", dest="trivalent_bfs", action="store_false")
    p.add_argument("--out")
    cfg = SurveyConfig(**vars(p.parse_args()))
    rows = run(cfg)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            json.dump({"config": asdict(cfg), "graphs": rows}, fh, indent=2)


if __name__ == "__main__":
    main()
