"""Compare cobar Cotor over the dual Steenrod algebra with a minimal resolution over A_p."""
from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))

from cobarkit.cobar import cotor_dims  # noqa: E402
from oracles import minimal_resolution_dims  # noqa: E402


@dataclass
class CrossCheckConfig:
    p: int = 3
    s_max: int = 3
    t_max: int = 30


def run(cfg: CrossCheckConfig) -> bool:
    t0 = time.perf_counter()
    res = minimal_resolution_dims(cfg.p, cfg.s_max, cfg.t_max)
    t1 = time.perf_counter()
    cob = cotor_dims("full", "trivial", cfg.s_max, cfg.t_max, cfg.p)
    t2 = time.perf_counter()
    print(f"resolution {t1 - t0:.2f}s, cobar {t2 - t1:.2f}s")
    ok = True
    for (s, t), d in sorted(res.items()):
        if d or cob[s, t]:
            flag = "" if d == cob[s, t] else "  MISMATCH"
            ok &= not flag
            print(f"Ext^{{{s},{t}}}: resolution {d}, cobar {cob[s, t]}{flag}")
    return ok


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--prime", type=int, default=3)
    ap.add_argument("--smax", type=int, default=3)
    ap.add_argument("--tmax", type=int, default=30)
    a = ap.parse_args()
    sys.exit(0 if run(CrossCheckConfig(a.prime, a.smax, a.tmax)) else 1)


if __name__ == "__main__":
    main()
