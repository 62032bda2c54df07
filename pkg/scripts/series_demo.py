"""Decompose every series spec in a directory and report the checks.

    python scripts/series_demo.py data/series --depth 64 --sample 256
"""

import argparse
from pathlib import Path

from groupsemi.series import load_series_spec, prefix_sum_identity, validate_certificate, weak_goldbach_series


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("directory", nargs="?", default="data/series")
    ap.add_argument("--depth", type=int, default=64)
    ap.add_argument("--sample", type=int, default=256)
    ap.add_argument("--no-shortcut", action="store_true")
    args = ap.parse_args()

    bad = 0
    for path in sorted(Path(args.directory).glob("*.json")):
        f = load_series_spec(path)
        dec = weak_goldbach_series(f, shortcut=not args.no_shortcut)
        same, cutoff = prefix_sum_identity(f, dec.summands, args.depth)
        print(f"{path.name}: f = {f.fmt()}")
        for s, c in zip(dec.summands, dec.certificates):
            problems = validate_certificate(s, c, args.sample)
            bad += bool(problems)
            label = getattr(s, "label", "f")
            print(f"  {label:<4} {c.kind.value:<18} {'ok' if not problems else problems}  {s.fmt(6)}")
        bad += not same
        print(f"  prefix identity up to x^{cutoff}: {'holds' if same else 'FAILS'}")
    raise SystemExit(1 if bad else 0)


if __name__ == "__main__":
    main()
