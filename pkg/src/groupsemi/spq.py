"""Bounded computational checks for S_pq = N_0[A, B], A = q/(p+q), B = q^2/(p^2+pq).

The rewriting rule comes from the identity B = A*B + A^2: one copy of
A^n B^m becomes A^(n+1) B^m + A^(n+2) B^(m-1). Repeating it on the term with
the smallest B-exponent surfaces a pure power of A, which is an additive atom.
Atom claims themselves are only corroborated here by exhaustive search over
bounded formal combinations, never proved.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from sympy import isprime

from .coefficients import Spq, spq_hypothesis_holds
from .errors import NotApplicable, SearchLimitExceeded

REFUTATION_NODE_LIMIT = 5 * 10**6


@dataclass
class RewriteTrace:
    start: tuple
    end: tuple = ()
    steps: list = field(default_factory=list)  # [((n, m), value_preserved), ...]


def verify_identity(p: int, q: int) -> dict:
    """Check B == A*B + A^2 and A < 1 < B exactly.

    Raises ``NotApplicable`` when p, q are not primes with q^2 > p^2 + pq.
    """
    if not (isprime(p) and isprime(q)):
        raise NotApplicable(f"p={p}, q={q} must both be prime")
    if not spq_hypothesis_holds(p, q):
        raise NotApplicable(f"q^2 > p^2 + pq fails for p={p}, q={q} ({q * q} <= {p * p + p * q})")
    A = Fraction(q, p + q)
    B = Fraction(q * q, p * p + p * q)
    return {"identity": B == A * B + A * A, "order": A < 1 < B, "A": A, "B": B}


def rewrite_step(dom: Spq, elem: tuple, term: tuple[int, int]) -> tuple:
    """Replace one copy of A^n B^m (m >= 1) by A^(n+1) B^m + A^(n+2) B^(m-1)."""
    n, m = term
    d = dict(dom.check(elem))
    if d.get(term, 0) < 1:
        raise ValueError(f"term A^{n}B^{m} does not occur in {dom.fmt(elem)}")
    if m < 1:
        raise ValueError(f"term A^{n}B^{m} has no B factor to rewrite")
    d[term] -= 1
    for nm in ((n + 1, m), (n + 2, m - 1)):
        d[nm] = d.get(nm, 0) + 1
    out = Spq.from_dict(d)
    assert dom.value(out) == dom.value(elem)
    return out


def rewrite_to_pure_power(dom: Spq, elem: tuple) -> tuple[tuple, RewriteTrace]:
    """Rewrite until some term has B-exponent zero; the value never changes."""
    dom.check(elem)
    if not elem:
        raise ValueError("rewrite_to_pure_power requires a nonzero element")
    trace = RewriteTrace(start=elem)
    cur = elem
    while not any(m == 0 for (_n, m), _c in cur):
        n, m = min((m, n) for (n, m), _c in cur)[::-1]
        nxt = rewrite_step(dom, cur, (n, m))
        trace.steps.append(((n, m), dom.value(nxt) == dom.value(cur)))
        cur = nxt
    trace.end = cur
    return cur, trace


@dataclass(frozen=True)
class SearchOutcome:
    found: bool
    parts: tuple = ()  # generator multiset ((n, m), multiplicity) when found
    nodes: int = 0

    def split(self) -> tuple[tuple, tuple] | None:
        """The found multiset as e1 + e2, e1 the first generator copy."""
        if not self.found:
            return None
        (nm, c), rest = self.parts[0], list(self.parts[1:])
        if c > 1:
            rest.insert(0, (nm, c - 1))
        return ((nm, 1),), Spq.from_dict(dict(rest))


def bounded_decomposition_search(
    dom: Spq, target: tuple, degree_bound: int, parts: int, node_limit: int = REFUTATION_NODE_LIMIT
) -> SearchOutcome:
    """Look for target == e1 + e2 with e1, e2 nonzero, over generators A^n B^m
    with n, m <= degree_bound and at most ``parts`` generator copies in total.

    Equivalently: a multiset of at least two generators whose values sum to
    value(target). Values are scaled to integers by a common denominator.
    """
    if degree_bound < 0 or parts < 2:
        raise ValueError("need degree_bound >= 0 and parts >= 2")
    gens = [(n, m) for n in range(degree_bound + 1) for m in range(degree_bound + 1)]
    vals = {g: dom.gen_value(*g) for g in gens}
    tval = dom.value(target)
    den = lcm(tval.denominator, *(v.denominator for v in vals.values()))
    T = int(tval * den)
    items = sorted(((int(v * den), g) for g, v in vals.items()), key=lambda t: (-t[0], t[1]))
    items = [t for t in items if t[0] <= T]
    neg_vals = [-v for v, _ in items]
    nodes = 0
    chosen: list = []

    def dfs(start: int, remaining: int, left: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > node_limit:
            raise SearchLimitExceeded("S_pq decomposition search", nodes, node_limit)
        if remaining == 0:
            return len(chosen) >= 2
        if left == 0:
            return False
        i = max(start, bisect.bisect_left(neg_vals, -remaining))
        while i < len(items):
            v, g = items[i]
            if v * left < remaining:
                break
            chosen.append(g)
            if dfs(i, remaining - v, left - 1):
                return True
            chosen.pop()
            i += 1
        return False

    if dfs(0, T, parts):
        counts: dict = {}
        for g in chosen:
            counts[g] = counts.get(g, 0) + 1
        return SearchOutcome(True, tuple(sorted(counts.items())), nodes)
    return SearchOutcome(False, (), nodes)


def bounded_atom_refutation(dom: Spq, k: int, degree_bound: int, parts: int) -> SearchOutcome:
    """Search for a splitting of A^k; ``found=False`` corroborates that A^k is an atom."""
    if k < 0 or k > 6:
        raise ValueError("k must lie in [0, 6]")
    return bounded_decomposition_search(dom, Spq.gen(k, 0), degree_bound, parts)
