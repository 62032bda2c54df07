"""Bounded checks in N_0[A, B] for several (p, q), with timing per refutation.

    python scripts/spq_report.py --bound 4 --parts 6 --kmax 4
"""

import argparse
import time

from groupsemi.coefficients import Spq, spq_hypothesis_holds
from groupsemi.spq import bounded_atom_refutation, bounded_decomposition_search, rewrite_to_pure_power, verify_identity
from sympy import primerange


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--max-prime", type=int, default=13)
    ap.add_argument("--bound", type=int, default=4)
    ap.add_argument("--parts", type=int, default=6)
    ap.add_argument("--kmax", type=int, default=4)
    args = ap.parse_args()

    pairs = [(p, q) for p in primerange(2, args.max_prime + 1) for q in primerange(2, args.max_prime + 1)
             if spq_hypothesis_holds(p, q)]
    print(f"{'p':>3} {'q':>3}  {'A':>8} {'B':>8}  identity  A^k split (k<={args.kmax})  B split  nodes   secs")
    for p, q in pairs:
        dom = Spq(p, q)
        ident = verify_identity(p, q)
        t0 = time.perf_counter()
        nodes = 0
        split_k = []
        for k in range(args.kmax + 1):
            res = bounded_atom_refutation(dom, k, args.bound, args.parts)
            nodes += res.nodes
            if res.found:
                split_k.append(k)
        ctrl = bounded_decomposition_search(dom, Spq.gen(0, 1), args.bound, args.parts)
        secs = time.perf_counter() - t0
        print(
            f"{p:>3} {q:>3}  {str(ident['A']):>8} {str(ident['B']):>8}  {str(ident['identity']):>8}  "
            f"{str(split_k or 'none'):>20}  {str(ctrl.found):>7}  {nodes:>5}  {secs:5.2f}"
        )

    dom = Spq(2, 5)
    elem = Spq.from_dict({(0, 3): 1, (1, 2): 2})
    out, trace = rewrite_to_pure_power(dom, elem)
    print(f"\nrewrite in S_(2,5): {dom.fmt(elem)} -> {dom.fmt(out)} in {len(trace.steps)} steps, value {dom.value(out)}")


if __name__ == "__main__":
    main()
