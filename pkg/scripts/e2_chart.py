"""Print the Adams E2 chart for MSU at an odd prime, direct cobar Cotor beside the model."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from cobarkit.adams import e2_model_dims
from cobarkit.cobar import cotor_dims


@dataclass
class ChartConfig:
    p: int = 3
    s_max: int = 3
    t_max: int = 24
    direct: bool = True


def chart(cfg: ChartConfig) -> None:
    model = e2_model_dims(cfg.p, cfg.s_max, cfg.t_max)
    direct = None
    if cfg.direct:
        t0 = time.perf_counter()
        direct = cotor_dims("full", "MSU", cfg.s_max, cfg.t_max, cfg.p)
        print(f"direct cobar Cotor in {time.perf_counter() - t0:.2f}s")
    print(f"p = {cfg.p}; rows s, columns t - s; entries direct/model")
    print("s\\t-s " + " ".join(f"{n:>5}" for n in range(cfg.t_max + 1)))
    for s in range(cfg.s_max, -1, -1):
        cells = []
        for n in range(cfg.t_max + 1):
            m = model[s, s + n]
            if direct is None:
                cells.append(f"{m:>5}")
                continue
            if s + n > cfg.t_max:
                cells.append(f"{'.':>5}")
                continue
            d = direct[s, s + n]
            cells.append(f"{d}/{m}".rjust(5) + ("" if d == m else "!"))
        print(f"{s:>5} " + " ".join(cells))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--smax", type=int, default=3)
    ap.add_argument("--tmax", type=int, default=24)
    ap.add_argument("--model-only", action="store_true")
    a = ap.parse_args()
    chart(ChartConfig(a.prime, a.smax, a.tmax, not a.model_only))


if __name__ == "__main__":
    main()
