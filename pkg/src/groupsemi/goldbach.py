"""Writing elements of S[G] as sums of at most two irreducibles.

The constructions need every nonzero coefficient to split as (unit) + (rest),
which is possible exactly when the additive atoms of S are its units. When a
needed split is unavailable they refuse with ``ConditionViolated``.

Notation in traces: for a normalized f with exponents g_0 > ... > g_n = 0 the
"upper part" collects the terms with 2 g_i > g_0 and the "lower part" those
with 2 g_i < g_0; a term with 2 g_j = g_0 sits on the midpoint.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import ConditionViolated, NotApplicable, SearchLimitExceeded
from .polyexpr import (
    FACTOR_SEARCH_LIMIT,
    IrreducibilityCertificate,
    PolyExpr,
    format_exponent,
    is_irreducible,
    is_unit_poly,
    normalize,
    poly_sum,
)

SUMMAND_BOUND_LIMIT = 10**6


@dataclass
class Decomposition:
    summands: list
    certificates: list = field(default_factory=list)
    trace: list = field(default_factory=list)

    def __len__(self):
        return len(self.summands)

    def total(self):
        first = self.summands[0]
        return poly_sum(self.summands, first.domain, first.group)


def _split(dom, c, where: str):
    sp = dom.unit_split(c)
    if sp is None:
        raise ConditionViolated(
            f"coefficient {dom.fmt(c)} at {where} has no unit split (u + v with u a unit)"
        )
    return sp


def _poly(terms, f: PolyExpr) -> PolyExpr:
    return PolyExpr.from_terms(terms, f.domain, f.group)


def decompose_binomial(f: PolyExpr) -> Decomposition:
    if len(f) != 2:
        raise NotApplicable("decompose_binomial needs exactly two terms")
    dom = f.domain
    (g0, s0), (g1, s1) = f.terms
    if dom.is_mult_unit(s0) or dom.is_mult_unit(s1):
        return Decomposition([f], trace=["binomial: a coefficient is a unit, irreducible as is"])
    u0, v0 = _split(dom, s0, "the leading term")
    u1, v1 = _split(dom, s1, "the trailing term")
    return Decomposition(
        [_poly([(g0, u0), (g1, v1)], f), _poly([(g0, v0), (g1, u1)], f)],
        trace=["binomial: both coefficients split, units crossed over the two summands"],
    )


def decompose_trinomial(f: PolyExpr) -> Decomposition:
    if len(f) != 3:
        raise NotApplicable("decompose_trinomial needs exactly three terms")
    dom = f.domain
    (g0, s0), (g1, s1), (g2, s2) = f.terms
    unit = dom.is_mult_unit
    if unit(s0) and unit(s1) and unit(s2):
        return Decomposition([f], trace=["trinomial: three unit coefficients, irreducible as is"])
    u0, v0 = _split(dom, s0, "the leading term")
    u2, v2 = _split(dom, s2, "the trailing term")
    if unit(s1):
        side = "leading" if not dom.is_zero(v0) else "trailing"
        return Decomposition(
            [_poly([(g0, v0), (g1, s1), (g2, v2)], f), _poly([(g0, u0), (g2, u2)], f)],
            trace=[f"trinomial: unit middle coefficient, remainder kept on the {side} side"],
        )
    u1, v1 = _split(dom, s1, "the middle term")
    return Decomposition(
        [_poly([(g0, v0), (g1, u1), (g2, s2)], f), _poly([(g0, u0), (g1, v1)], f)],
        trace=["trinomial: non-unit middle coefficient split across both summands"],
    )


def _decompose_general(f: PolyExpr) -> Decomposition:
    dom, grp = f.domain, f.group
    f0, shift = normalize(f)
    terms = f0.terms
    n = len(terms) - 1
    g0, s0 = terms[0]
    sn = terms[n][1]
    u0, v0 = _split(dom, s0, "the leading term")
    un, vn = _split(dom, sn, "the trailing term")
    trace = [f"general: {n + 1} terms"]
    if shift != grp.zero:
        trace.append(f"general: shifted by {format_exponent(grp.neg(shift), grp)} so the lowest exponent is 0")

    upper = [(g0, v0)]
    lower = [(g0, u0)]
    mid = None
    for g, s in terms[1:n]:
        d = grp.double(g)
        if d > g0:
            upper.append((g, s))
        elif d < g0:
            lower.append((g, s))
        else:
            mid = (g, s)
    upper.append((grp.zero, un))
    lower.append((grp.zero, vn))
    up = _poly(upper, f0)
    lo = _poly(lower, f0)

    if is_unit_poly(up):
        # Move the highest middle term over to the unit side.
        g1, s1 = terms[1]
        lo = _poly([t for t in lo.terms if t[0] != g1], f0)
        up = _poly(list(up.terms) + [(g1, s1)], f0)
        trace.append("general: upper part is a unit; second term moved onto it")
    elif is_unit_poly(lo):
        gl, sl = terms[n - 1]
        up = _poly([t for t in up.terms if t[0] != gl], f0)
        lo = _poly(list(lo.terms) + [(gl, sl)], f0)
        trace.append("general: lower part is a unit; second-to-last term moved onto it")
    else:
        trace.append("general: upper and lower parts are both non-units")
        if mid is not None:
            if len(up) >= 3 or dom.is_zero(v0):
                up = _poly(list(up.terms) + [mid], f0)
                trace.append("general: midpoint term attached to the upper part")
            elif len(lo) >= 3 or dom.is_zero(vn):
                lo = _poly(list(lo.terms) + [mid], f0)
                trace.append("general: midpoint term attached to the lower part")
            else:
                raise AssertionError("two binomial parts with nonzero remainders imply three terms")
    assert up + lo == f0, "decomposition lost a term"
    return Decomposition([up.shift(shift), lo.shift(shift)], trace=trace)


def goldbach_decompose(f: PolyExpr, certify: bool = True, limit: int = FACTOR_SEARCH_LIMIT) -> Decomposition:
    """Write ``f`` (at least two terms) as a sum of at most two irreducibles.

    One summand is returned exactly for binomials with a unit coefficient and
    trinomials with three unit coefficients. With ``certify`` each summand is
    checked by ``is_irreducible`` and its certificate attached.
    """
    if len(f) <= 1:
        raise NotApplicable("Goldbach decomposition needs at least two terms")
    if len(f) == 2:
        dec = decompose_binomial(f)
    elif len(f) == 3:
        dec = decompose_trinomial(f)
    else:
        dec = _decompose_general(f)
    if certify:
        dec.certificates = [is_irreducible(s, limit)[1] for s in dec.summands]
    return dec


def certificate_json(f: PolyExpr, cert: IrreducibilityCertificate) -> dict:
    out = {"summand": str(f)}
    out.update(cert.to_json(f.domain))
    return out


# --------------------------------------------------------------------------
# exhaustive check of "sum of at most n irreducibles" on small inputs


def _additive_splits(dom, c, n: int):
    """All ordered n-tuples of elements of S summing to c (entries may be zero).

    Natural and N_0[t] are free commutative monoids on 1 and on the t^k, so
    splitting is coefficient-wise.
    """
    if dom.kind == "nat":
        return list(_compositions(c, n))
    if dom.kind == "natpoly":
        per_degree = [list(_compositions(x, n)) for x in c]
        out = []
        for combo in itertools.product(*per_degree):
            out.append(tuple(dom.check(_trim_tuple(col)) for col in zip(*combo)) if combo else ((),) * n)
        return out
    raise NotApplicable(f"additive splitting is not enumerated over {dom.kind}")


def _trim_tuple(v):
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _compositions(c: int, n: int):
    if n == 1:
        yield (c,)
        return
    for first in range(c + 1):
        for rest in _compositions(c - first, n - 1):
            yield (first,) + rest


def verify_summand_bound(f: PolyExpr, n: int, limit: int = SUMMAND_BOUND_LIMIT) -> bool:
    """True iff ``f`` is a sum of at most ``n`` irreducibles, by exhaustion."""
    if n < 1:
        raise ValueError("n must be positive")
    dom = f.domain
    per_term = [_additive_splits(dom, c, n) for c in f.coeffs]
    size = 1
    for opts in per_term:
        size *= len(opts)
    if size > limit:
        raise SearchLimitExceeded("summand-bound enumeration", size, limit)

    memo: dict = {}

    def irreducible(p: PolyExpr) -> bool:
        if p not in memo:
            memo[p] = False if is_unit_poly(p) else is_irreducible(p)[0]
        return memo[p]

    for combo in itertools.product(*per_term):
        slots = [
            _poly([(e, split[k]) for e, split in zip(f.support, combo)], f) for k in range(n)
        ]
        if all(irreducible(p) for p in slots if p):
            return True
    return False
