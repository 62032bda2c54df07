"""Exhaustive Goldbach sweep over N_0[Z] plus a random N_0[Z^2] lex sample.

    python scripts/run_sweep.py --max-exp 5 --max-coeff 4 --lex 500
"""

import argparse
import time
from dataclasses import dataclass

from groupsemi.sweep import natural_instances, random_lex_instances, run_sweep


@dataclass
class SweepConfig:
    max_exp: int = 5
    max_coeff: int = 4
    lex: int = 500
    seed: int = 0
    cross_checks: bool = True


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-exp", type=int, default=SweepConfig.max_exp)
    ap.add_argument("--max-coeff", type=int, default=SweepConfig.max_coeff)
    ap.add_argument("--lex", type=int, default=SweepConfig.lex)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--no-cross-checks", dest="cross_checks", action="store_false")
    cfg = SweepConfig(**vars(ap.parse_args()))

    t0 = time.perf_counter()
    report = run_sweep(natural_instances(cfg.max_exp, cfg.max_coeff), cfg.cross_checks)
    t1 = time.perf_counter()
    print(f"N_0[Z], supports in [0..{cfg.max_exp}], coefficients in [1..{cfg.max_coeff}]  ({t1 - t0:.1f}s)")
    for name, value in report.rows():
        print(f"  {name:<28}{value}")
    print(f"  {'gap criterion fired':<28}{report.criterion_fired}")
    ok = report.ok
    if cfg.lex:
        lex = run_sweep(random_lex_instances(cfg.lex, seed=cfg.seed), cross_checks=False)
        print(f"N_0[Z^2] lex, {cfg.lex} random instances  ({time.perf_counter() - t1:.1f}s)")
        for name, value in lex.rows():
            print(f"  {name:<28}{value}")
        ok = ok and lex.ok
    raise SystemExit(0 if ok else 1)


if __name__ == "__main__":
    main()
