"""Structured series in S[[Z]] and their decomposition into at most three irreducibles.

A series is a restartable stream of ``(exponent, coeff)`` pairs with strictly
increasing exponents. Two parametric families are decidable:

* arithmetic tail: a finite head followed by exponents ``start + k*gap``;
* increasing-gap tail: a finite head followed by gaps ``gap0, gap0+inc, ...``.

Both carry a periodic coefficient pattern. Summands produced by
:func:`weak_goldbach_series` are ``DerivedSeries``: an allocation rule over the
parent stream together with facts established by the construction. Facts are
re-checked by sampling a prefix; that check is sound for the sampled depth
only. Coefficients are naturals throughout.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from functools import cached_property
from itertools import islice
from typing import Callable, Iterator

from .coefficients import Natural
from .errors import ConditionViolated, NotApplicable, Unsupported
from .groups import IntGroup
from .polyexpr import format_term

NAT = Natural()
CONSTRUCTION_DEPTH = 64
SAMPLE_DEPTH = 256


# --------------------------------------------------------------------------
# greedy subsequence with strictly increasing gaps


class GreedySelector:
    """Online form of the greedy choice: keep the first two exponents, then
    every exponent whose distance to the last kept one exceeds the last kept gap."""

    def __init__(self):
        self.last = None
        self.last_gap = None

    def offer(self, g: int) -> bool:
        if self.last is None:
            self.last = g
            return True
        if self.last_gap is None or g - self.last > self.last_gap:
            self.last_gap = g - self.last
            self.last = g
            return True
        return False


def gap_subsequence(exponents) -> Iterator[int]:
    """Indices n_0 = 0, n_1 = 1, n_{k+1} = least M > n_k with
    g_M - g_{n_k} > g_{n_k} - g_{n_{k-1}}."""
    sel = GreedySelector()
    for i, g in enumerate(exponents):
        if sel.offer(g):
            yield i


# --------------------------------------------------------------------------
# facts and certificates


@dataclass(frozen=True)
class MinGapIndices:
    """Indices j with g_{j+1} - g_j minimal: ``finite`` plus, when
    ``from_index`` is set, every index >= from_index."""

    finite: tuple
    from_index: int | None = None

    @property
    def infinite(self) -> bool:
        return self.from_index is not None

    def __contains__(self, i: int) -> bool:
        return i in self.finite or (self.from_index is not None and i >= self.from_index)

    def __iter__(self):
        yield from self.finite
        if self.from_index is not None:
            i = self.from_index
            while True:
                if i not in self.finite:
                    yield i
                i += 1

    def to_json(self):
        return {"finite": list(self.finite), "from_index": self.from_index}


@dataclass(frozen=True)
class StructureFacts:
    first_gap: int
    gaps_exceed_first_after: int | None = None
    gaps_strictly_increasing_after: int | None = None
    min_gap: int | None = None
    min_gap_indices: MinGapIndices | None = None
    has_unit_coeff: int | None = None

    def to_json(self):
        return {
            "first_gap": self.first_gap,
            "gaps_exceed_first_after": self.gaps_exceed_first_after,
            "gaps_strictly_increasing_after": self.gaps_strictly_increasing_after,
            "min_gap": self.min_gap,
            "min_gap_indices": self.min_gap_indices.to_json() if self.min_gap_indices else None,
            "has_unit_coeff": self.has_unit_coeff,
        }


class SeriesMonolithicKind(str, enum.Enum):
    INCREASING_GAPS = "increasing-gaps"  # gaps strictly increasing from some index on
    FIRST_GAP_MINIMAL = "first-gap-minimal"  # g_1 - g_0 < g_{i+1} - g_i for all i >= 1


@dataclass(frozen=True)
class SeriesCertificate:
    kind: SeriesMonolithicKind
    index: int
    unit_witness: int | None = None
    gcd: int | None = None

    def to_json(self):
        return {
            "kind": self.kind.value,
            "index": self.index,
            "unit_witness": self.unit_witness,
            "gcd": self.gcd,
        }


# --------------------------------------------------------------------------
# series expressions


class SeriesExpr:
    domain = NAT
    family = ""

    def terms(self) -> Iterator[tuple[int, int]]:
        raise NotImplementedError

    @property
    def facts(self) -> StructureFacts:
        raise NotImplementedError

    def prefix(self, T: int) -> list:
        if T < 0:
            raise ValueError("prefix length must be nonnegative")
        return list(islice(self.terms(), T))

    def fmt(self, T: int = 8) -> str:
        return format_series(self.prefix(T + 1), T)


def format_series(terms: list, T: int) -> str:
    grp = IntGroup()
    shown = [format_term(e, c, NAT, grp) for e, c in terms[:T]]
    if len(terms) > T:
        shown.append("...")
    return " + ".join(shown) if shown else "0"


@dataclass(frozen=True)
class ArithmeticTail:
    start: int
    gap: int
    coeffs: tuple

    kind = "arithmetic"

    def exponent(self, k):
        return self.start + k * self.gap

    def gap_at(self, k):
        return self.gap

    @property
    def min_gap(self):
        return self.gap


@dataclass(frozen=True)
class IncreasingGapTail:
    start: int
    gap0: int
    inc: int
    coeffs: tuple

    kind = "increasing"

    def exponent(self, k):
        return self.start + k * self.gap0 + self.inc * k * (k - 1) // 2

    def gap_at(self, k):
        return self.gap0 + k * self.inc

    @property
    def min_gap(self):
        return self.gap0


@dataclass(frozen=True)
class StructuredSeries(SeriesExpr):
    head: tuple
    tail: ArithmeticTail | IncreasingGapTail

    def __post_init__(self):
        object.__setattr__(self, "head", tuple((int(e), int(c)) for e, c in self.head))
        tail = self.tail
        object.__setattr__(self, "tail", type(tail)(**{**tail.__dict__, "coeffs": tuple(tail.coeffs)}))
        exps = [e for e, _ in self.head] + [self.tail.start]
        if any(b <= a for a, b in zip(exps, exps[1:])):
            raise ValueError("head exponents must increase strictly and stay below the tail start")
        if any(c < 1 for _, c in self.head) or not self.tail.coeffs or any(c < 1 for c in self.tail.coeffs):
            raise ValueError("series coefficients must be positive naturals")
        if isinstance(self.tail, ArithmeticTail) and self.tail.gap < 1:
            raise ValueError("arithmetic tail needs gap >= 1")
        if isinstance(self.tail, IncreasingGapTail) and (self.tail.gap0 < 1 or self.tail.inc < 1):
            raise ValueError("increasing tail needs gap0 >= 1 and inc >= 1")

    @property
    def family(self):
        return self.tail.kind

    def terms(self):
        yield from self.head
        tail, cs = self.tail, self.tail.coeffs
        k = 0
        while True:
            yield tail.exponent(k), cs[k % len(cs)]
            k += 1

    def gap(self, i: int) -> int:
        """g_{i+1} - g_i in closed form."""
        h = len(self.head)
        if i < h - 1:
            return self.head[i + 1][0] - self.head[i][0]
        if i == h - 1:
            return self.tail.start - self.head[-1][0]
        return self.tail.gap_at(i - h)

    def coefficient_gcd(self) -> int:
        return math.gcd(*(c for _, c in self.head), *self.tail.coeffs)

    @cached_property
    def facts(self) -> StructureFacts:
        h = len(self.head)
        first = self.gap(0)
        # the tail's smallest gap sits at its start, so index max(h, 1) covers it
        exceed = 1 if all(self.gap(i) > first for i in range(1, max(h, 1) + 1)) else None
        increasing = None
        if isinstance(self.tail, IncreasingGapTail):
            increasing = h
            while increasing > 0 and self.gap(increasing - 1) < self.gap(increasing):
                increasing -= 1
        delta, indices = self._min_gap()
        unit = None
        for i, c in enumerate([c for _, c in self.head] + list(self.tail.coeffs)):
            if c == 1:
                unit = i
                break
        return StructureFacts(first, exceed, increasing, delta, indices, unit)

    def _min_gap(self) -> tuple[int, MinGapIndices]:
        h = len(self.head)
        delta = min([self.gap(i) for i in range(h)] + [self.tail.min_gap])
        finite = [i for i in range(h) if self.gap(i) == delta]
        if isinstance(self.tail, ArithmeticTail):
            if self.tail.gap == delta:
                return delta, MinGapIndices(tuple(finite), h)
            return delta, MinGapIndices(tuple(finite))
        if self.tail.gap0 == delta:
            finite.append(h)
        return delta, MinGapIndices(tuple(finite))

    def to_spec(self) -> dict:
        tail = {"type": self.tail.kind, "start": self.tail.start, "coeffs": list(self.tail.coeffs)}
        if isinstance(self.tail, ArithmeticTail):
            tail["gap"] = self.tail.gap
        else:
            tail.update(gap0=self.tail.gap0, inc=self.tail.inc)
        return {"head": [list(t) for t in self.head], "tail": tail}


# Allocation rules: a rule maps the parent term stream to a stream of
# (exponent, shares, tag, closed) where shares[k] is the coefficient given to
# summand k and ``closed`` holds the slots that will receive nothing further.
Rule = Callable[[Iterator], Iterator]
NONE_CLOSED = frozenset()


@dataclass(frozen=True, eq=False)
class DerivedSeries(SeriesExpr):
    parent: SeriesExpr
    rule: Rule
    slot: int
    label: str
    derived_facts: StructureFacts | None = None

    family = "derived"

    def terms(self):
        for g, c, _tag in self.tagged_terms():
            yield g, c

    def tagged_terms(self):
        for g, shares, tag, closed in self.rule(self.parent.terms()):
            if shares[self.slot]:
                yield g, shares[self.slot], tag
            if self.slot in closed:
                return

    @property
    def facts(self):
        if self.derived_facts is None:
            raise Unsupported("facts of a derived series are set by its construction")
        return self.derived_facts


def series_from_spec(spec: dict) -> StructuredSeries:
    """Build a series from the spec-file dictionary (see README)."""
    unknown = set(spec) - {"head", "tail"}
    if unknown:
        raise ValueError(f"unknown series fields: {sorted(unknown)}")
    head = tuple((int(e), int(c)) for e, c in spec.get("head", []))
    t = spec["tail"]
    coeffs = tuple(int(c) for c in t.get("coeffs", [1]))
    kind = t.get("type")
    if kind == "arithmetic":
        allowed = {"type", "start", "gap", "coeffs"}
        tail = ArithmeticTail(int(t["start"]), int(t["gap"]), coeffs)
    elif kind == "increasing":
        allowed = {"type", "start", "gap0", "inc", "coeffs"}
        tail = IncreasingGapTail(int(t["start"]), int(t["gap0"]), int(t["inc"]), coeffs)
    else:
        raise ValueError(f"tail.type must be 'arithmetic' or 'increasing', got {kind!r}")
    if set(t) - allowed:
        raise ValueError(f"unknown tail fields: {sorted(set(t) - allowed)}")
    return StructuredSeries(head, tail)


def load_series_spec(path) -> StructuredSeries:
    with open(path, encoding="utf-8") as fh:
        return series_from_spec(json.load(fh))


# --------------------------------------------------------------------------
# analysis and certificates


def series_prefix(f: SeriesExpr, T: int) -> list:
    return f.prefix(T)


def min_gap_analysis(f: SeriesExpr) -> tuple[int, MinGapIndices]:
    if not isinstance(f, StructuredSeries):
        raise Unsupported("minimum-gap analysis is only decided for the arithmetic and increasing families")
    return f.facts.min_gap, f.facts.min_gap_indices


def series_monolithic_cert(f: SeriesExpr) -> SeriesCertificate | None:
    facts = f.facts
    if facts.gaps_strictly_increasing_after is not None:
        return SeriesCertificate(SeriesMonolithicKind.INCREASING_GAPS, facts.gaps_strictly_increasing_after)
    if facts.gaps_exceed_first_after == 1:
        return SeriesCertificate(SeriesMonolithicKind.FIRST_GAP_MINIMAL, 1)
    return None


def series_irreducible_cert(f: SeriesExpr) -> SeriesCertificate | None:
    """Monolithic certificate plus evidence that 1 is a gcd of the coefficients."""
    mono = series_monolithic_cert(f)
    if mono is None:
        return None
    unit = f.facts.has_unit_coeff
    if unit is not None:
        return SeriesCertificate(mono.kind, mono.index, unit_witness=unit, gcd=1)
    if isinstance(f, StructuredSeries) and f.coefficient_gcd() == 1:
        return SeriesCertificate(mono.kind, mono.index, gcd=1)
    return None


def check_facts(f: SeriesExpr, depth: int = SAMPLE_DEPTH) -> list[str]:
    """Re-check every stated fact on the first ``depth`` gaps; returns problems found."""
    pre = f.prefix(depth + 1)
    problems = []
    exps = [e for e, _ in pre]
    if any(b <= a for a, b in zip(exps, exps[1:])):
        problems.append("exponents not strictly increasing")
    if any(c <= 0 for _, c in pre):
        problems.append("zero coefficient in stream")
    gaps = [b - a for a, b in zip(exps, exps[1:])]
    facts = f.facts
    if not gaps:
        return problems + ["fewer than two terms sampled"]
    if gaps[0] != facts.first_gap:
        problems.append(f"first gap {gaps[0]} != {facts.first_gap}")
    if facts.gaps_exceed_first_after == 1 and not all(g > gaps[0] for g in gaps[1:]):
        problems.append("a later gap does not exceed the first gap")
    n = facts.gaps_strictly_increasing_after
    if n is not None and any(b <= a for a, b in zip(gaps[n:], gaps[n + 1 :])):
        problems.append(f"gaps not strictly increasing after index {n}")
    u = facts.has_unit_coeff
    if u is not None and u < len(pre) and pre[u][1] != 1:
        problems.append(f"coefficient at index {u} is not a unit")
    if facts.min_gap is not None:
        if min(gaps) < facts.min_gap:
            problems.append(f"sampled gap below stated minimum {facts.min_gap}")
        idx = facts.min_gap_indices
        for j, g in enumerate(gaps):
            if (g == facts.min_gap) != (j in idx):
                problems.append(f"minimum-gap membership wrong at index {j}")
                break
    return problems


def validate_certificate(f: SeriesExpr, cert: SeriesCertificate, depth: int = SAMPLE_DEPTH) -> list[str]:
    """Sample ``depth`` gaps and confirm what the certificate asserts."""
    pre = f.prefix(depth + 1)
    exps = [e for e, _ in pre]
    gaps = [b - a for a, b in zip(exps, exps[1:])]
    problems = []
    if len(pre) < 2:
        problems.append("fewer than two terms")
    if cert.kind is SeriesMonolithicKind.FIRST_GAP_MINIMAL:
        if not all(g > gaps[0] for g in gaps[1:]):
            problems.append("first gap is not strictly smallest")
    else:
        n = cert.index
        if any(b <= a for a, b in zip(gaps[n:], gaps[n + 1 :])):
            problems.append(f"gaps not strictly increasing after index {n}")
    if cert.unit_witness is not None:
        if cert.unit_witness >= len(pre) or pre[cert.unit_witness][1] != 1:
            problems.append("unit witness does not point at a unit coefficient")
    elif cert.gcd != 1 or math.gcd(*(c for _, c in pre)) != 1:
        problems.append("sampled coefficients have a common divisor")
    return problems + check_facts(f, depth)


# --------------------------------------------------------------------------
# decomposition into at most three irreducibles


@dataclass
class SeriesDecomposition:
    summands: list
    certificates: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def __len__(self):
        return len(self.summands)


def _unit_split(c: int, where: str):
    sp = NAT.unit_split(c)
    if sp is None:
        raise ConditionViolated(f"coefficient {c} at {where} has no unit split")
    return sp


def _case1_rule(mu: int, nu: int, increasing_after: int | None) -> Rule:
    """Slots: 0 = p'' (first gap delta), 1 = q'' (eventually increasing gaps).

    When the parent gaps strictly increase from ``increasing_after`` on and
    the greedy has just taken two consecutive indices past it, every later
    term is taken as well, so p'' is finite from there.
    """

    def rule(terms):
        sel = GreedySelector()
        k = 0
        prev_taken = None
        closed = NONE_CLOSED
        for i, (g, s) in enumerate(terms):
            if i in (mu, mu + 1):
                yield g, (s, 0), "pair", closed
            elif i <= nu + 1:
                yield g, (0, s), "head", closed
            elif sel.offer(g):
                if k >= 2 and prev_taken == i - 1 and increasing_after is not None and i - 1 >= increasing_after:
                    closed = frozenset({0})
                if k == 0:
                    u, v = _unit_split(s, f"index {i}")
                    yield g, (v, u), "greedy:0", closed
                elif k == 1:
                    u, v = _unit_split(s, f"index {i}")
                    yield g, (u, v), "greedy:1", closed
                else:
                    yield g, (0, s), f"greedy:{k}", closed
                k += 1
                prev_taken = i
            else:
                yield g, (s, 0), "rest", closed

    return rule


def _case2_rule(i1: int, i2: int) -> Rule:
    """Slots: 0 = p' , 1 = p'', 2 = q."""

    def rule(terms):
        sel = GreedySelector()
        k = 0
        pcount = 0
        for i, (g, s) in enumerate(terms):
            if i in (i1, i2):
                u, v = _unit_split(s, f"index {i}")
                p, q, tag = u, v, "pair-low"
            elif i in (i1 + 1, i2 + 1):
                p, q, tag = s, 0, "pair-high"
            elif i < i2:
                p, q, tag = 0, s, "head"
            elif sel.offer(g):
                if k == 0:
                    u, v = _unit_split(s, f"index {i}")
                    p, q = v, u
                else:
                    p, q = 0, s
                tag = f"greedy:{k}"
                k += 1
            else:
                p, q, tag = s, 0, "rest"
            if pcount < 2:
                to_first = True
            elif pcount < 4:
                to_first = False
            else:
                to_first = pcount % 2 == 0
            if p:
                pcount += 1
            yield g, ((p, 0, q) if to_first else (0, p, q)), tag, NONE_CLOSED

    return rule


def _position(summand: DerivedSeries, tag: str, limit: int = 10**6) -> int:
    for pos, (_g, _c, t) in enumerate(islice(summand.tagged_terms(), limit)):
        if t == tag:
            return pos
    raise AssertionError(f"tag {tag} not found in {summand.label}")


def weak_goldbach_series(f: SeriesExpr, shortcut: bool = True) -> SeriesDecomposition:
    """Write an infinite structured series as a sum of at most three irreducibles.

    * already certified irreducible: ``[f]`` (skipped when ``shortcut`` is off);
    * finitely many minimal gaps (first at mu, last at nu): two summands. One
      keeps the minimal-gap pair (g_mu, g_{mu+1}) followed only by wider gaps;
      the other keeps the head block and a greedy sparse subsequence of the
      tail whose gaps strictly increase. Two unit splits on the sparse part
      give each summand a unit coefficient.
    * infinitely many minimal gaps: three summands. Two disjoint minimal-gap
      pairs start the series p, which is dealt alternately to p' and p''; the
      third summand is again a sparse subsequence with increasing gaps.
    """
    if not isinstance(f, StructuredSeries):
        raise Unsupported("weak Goldbach decomposition needs an arithmetic or increasing-gap series")
    cert = series_irreducible_cert(f) if shortcut else None
    if cert is not None:
        return SeriesDecomposition([f], [cert], [f"irreducible as is ({cert.kind.value})"])
    delta, idx = min_gap_analysis(f)
    if not idx.infinite:
        mu, nu = min(idx.finite), max(idx.finite)
        rule = _case1_rule(mu, nu, f.facts.gaps_strictly_increasing_after)
        p = DerivedSeries(f, rule, 0, "p''")
        q = DerivedSeries(f, rule, 1, "q''")
        p = DerivedSeries(
            f, rule, 0, "p''",
            StructureFacts(delta, gaps_exceed_first_after=1, has_unit_coeff=_position(p, "greedy:1")),
        )
        q = DerivedSeries(
            f, rule, 1, "q''",
            StructureFacts(
                _first_gap(q),
                gaps_strictly_increasing_after=_position(q, "greedy:2"),
                has_unit_coeff=_position(q, "greedy:0"),
            ),
        )
        summands = [p, q]
        trace = [
            f"finite minimal-gap set: delta={delta}, first at {mu}, last at {nu}",
            f"pair ({mu}, {mu + 1}) and the sparse-tail complement form p''",
            f"head block and greedy sparse tail after index {nu + 1} form q''",
            "unit splits on the first two sparse-tail coefficients",
        ]
    else:
        it = iter(idx)
        i1 = next(it)
        i2 = next(i for i in it if i >= i1 + 2)
        rule = _case2_rule(i1, i2)
        q = DerivedSeries(f, rule, 2, "q")
        summands = [
            DerivedSeries(f, rule, 0, "p'", StructureFacts(delta, gaps_exceed_first_after=1, has_unit_coeff=0)),
            DerivedSeries(f, rule, 1, "p''", StructureFacts(delta, gaps_exceed_first_after=1, has_unit_coeff=0)),
            DerivedSeries(
                f, rule, 2, "q",
                StructureFacts(
                    _first_gap(q),
                    gaps_strictly_increasing_after=_position(q, "greedy:0"),
                    has_unit_coeff=_position(q, "greedy:0"),
                ),
            ),
        ]
        trace = [
            f"infinite minimal-gap set: delta={delta}, pairs at {i1} and {i2}",
            "p takes both pairs (unit parts of their lower coefficients) and the sparse-tail complement",
            "p is dealt to p' (terms 0, 1, 4, 6, ...) and p'' (terms 2, 3, 5, 7, ...)",
            f"q takes the remaining head terms and the greedy sparse tail after index {i2 + 1}",
        ]
    certs = []
    for s in summands:
        c = series_irreducible_cert(s)
        if c is None:
            raise AssertionError(f"construction left {s.label} without a certificate")
        certs.append(c)
    return SeriesDecomposition(summands, certs, trace)


def _first_gap(s: SeriesExpr) -> int:
    (a, _), (b, _) = s.prefix(2)
    return b - a


def prefix_sum_identity(f: SeriesExpr, summands: list, depth: int = CONSTRUCTION_DEPTH) -> tuple[bool, int]:
    """Merge the first ``depth`` terms of each summand up to the smallest
    frontier exponent and compare with ``f`` there. Returns (equal, cutoff)."""
    merged: dict = {}
    frontier = None
    for s in summands:
        pre = s.prefix(depth)
        if len(pre) == depth:
            frontier = pre[-1][0] if frontier is None else min(frontier, pre[-1][0])
        for e, c in pre:
            merged[e] = merged.get(e, 0) + c
    if frontier is None:
        raise NotApplicable("all summands are finite; compare them directly")
    merged = {e: c for e, c in merged.items() if e <= frontier}
    expected = {}
    for e, c in f.terms():
        if e > frontier:
            break
        expected[e] = c
    return merged == expected, frontier
