"""Finite sums f = s_0 x^{g_0} + ... + s_n x^{g_n} in S[G].

Terms are stored with strictly decreasing exponents and nonzero coefficients.
Besides arithmetic this module holds the monolithicity and irreducibility
tests: two sufficient gap criteria, an exact common-divisor test, and a
complete brute-force factor oracle for N_0 and N_0[t] coefficients.
"""

from __future__ import annotations

import enum
import functools
import itertools
import math
from dataclasses import dataclass
from typing import Any, Iterable

from .coefficients import CoeffDomain, Natural, NatPoly
from .errors import DomainMismatch, NotApplicable, SearchLimitExceeded, Unsupported
from .groups import Group, IntGroup

FACTOR_SEARCH_LIMIT = 10**7


@dataclass(frozen=True, eq=False)
class PolyExpr:
    terms: tuple
    domain: CoeffDomain
    group: Group

    @classmethod
    def from_terms(cls, terms: Iterable, domain: CoeffDomain, group: Group) -> "PolyExpr":
        """Canonicalize: merge like exponents, drop zeros, sort decreasing."""
        acc: dict = {}
        for e, c in terms:
            group.check(e)
            domain.check(c)
            acc[e] = domain.add(acc[e], c) if e in acc else c
        items = [(e, c) for e, c in acc.items() if not domain.is_zero(c)]
        items.sort(key=lambda t: t[0], reverse=True)
        return cls(tuple(items), domain, group)

    @classmethod
    def zero(cls, domain, group) -> "PolyExpr":
        return cls((), domain, group)

    @classmethod
    def monomial(cls, coeff, exp, domain, group) -> "PolyExpr":
        return cls.from_terms([(exp, coeff)], domain, group)

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    @property
    def support(self) -> tuple:
        return tuple(e for e, _ in self.terms)

    @property
    def coeffs(self) -> tuple:
        return tuple(c for _, c in self.terms)

    @property
    def degree(self):
        if not self.terms:
            raise NotApplicable("the zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def min_exponent(self):
        if not self.terms:
            raise NotApplicable("the zero polynomial has no minimum exponent")
        return self.terms[-1][0]

    def coeff(self, e):
        for g, c in self.terms:
            if g == e:
                return c
        return self.domain.zero

    def _check_compatible(self, other):
        if not isinstance(other, PolyExpr):
            return NotImplemented
        if self.domain != other.domain or self.group != other.group:
            raise DomainMismatch(
                f"operands live in different semidomains: "
                f"{self.domain.kind}[{self.group.name}] vs {other.domain.kind}[{other.group.name}]"
            )
        return None

    def __eq__(self, other):
        if not isinstance(other, PolyExpr):
            return NotImplemented
        if self.domain != other.domain or self.group != other.group or len(self) != len(other):
            return False
        eq = self.domain.equal
        return all(e1 == e2 and eq(c1, c2) for (e1, c1), (e2, c2) in zip(self.terms, other.terms))

    def __hash__(self):
        key = self.domain.key
        return hash((self.domain, self.group, tuple((e, key(c)) for e, c in self.terms)))

    def __add__(self, other):
        bad = self._check_compatible(other)
        if bad is NotImplemented:
            return bad
        return PolyExpr.from_terms(self.terms + other.terms, self.domain, self.group)

    def __mul__(self, other):
        bad = self._check_compatible(other)
        if bad is NotImplemented:
            return bad
        mul, add = self.domain.mul, self.group.add
        prods = [(add(e1, e2), mul(c1, c2)) for e1, c1 in self.terms for e2, c2 in other.terms]
        return PolyExpr.from_terms(prods, self.domain, self.group)

    def shift(self, g) -> "PolyExpr":
        """Multiply by the monomial x^g."""
        add = self.group.add
        return PolyExpr(tuple((add(e, g), c) for e, c in self.terms), self.domain, self.group)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"PolyExpr({format_poly(self)!r}, {self.domain.kind}, {self.group.name})"


def poly_add(f: PolyExpr, g: PolyExpr) -> PolyExpr:
    return f + g


def poly_mul(f: PolyExpr, g: PolyExpr) -> PolyExpr:
    return f * g


def poly_sum(polys: Iterable[PolyExpr], domain, group) -> PolyExpr:
    out = PolyExpr.zero(domain, group)
    for p in polys:
        out = out + p
    return out


# --------------------------------------------------------------------------
# printing


def format_exponent(e, group: Group) -> str:
    if isinstance(group, IntGroup):
        if e == 1:
            return "x"
        return f"x^({e})" if e < 0 else f"x^{e}"
    return "x^" + group.fmt(e)


def format_term(e, c, domain: CoeffDomain, group: Group) -> str:
    cs = domain.fmt(c)
    wrapped = f"({cs})" if "+" in cs else cs
    if e == group.zero:
        return wrapped
    xs = format_exponent(e, group)
    if c == domain.one:
        return xs
    if domain.is_simple(c):
        return cs + xs
    return wrapped + "*" + xs


def format_poly(f: PolyExpr) -> str:
    if not f.terms:
        return "0"
    return " + ".join(format_term(e, c, f.domain, f.group) for e, c in f.terms)


# --------------------------------------------------------------------------
# units, normalization, common divisors


def is_unit_poly(f: PolyExpr) -> bool:
    if not f:
        raise NotApplicable("is_unit_poly requires a nonzero element")
    return len(f) == 1 and f.domain.is_mult_unit(f.terms[0][1])


def normalize(f: PolyExpr) -> tuple[PolyExpr, Any]:
    """Return ``(f0, shift)`` with ``f == x^shift * f0`` and min exponent of f0 zero."""
    if not f:
        raise NotApplicable("normalize requires a nonzero element")
    shift = f.min_exponent
    return f.shift(f.group.neg(shift)), shift


def common_divisor(f: PolyExpr):
    """A non-unit common divisor of all coefficients of ``f``, or None.

    None means 1 is a greatest common divisor (every common divisor is a unit).
    Natural uses the integer gcd; N_0[t] enumerates the divisors of the
    smallest coefficient, which is exhaustive; S_pq is only decided when some
    coefficient is itself a unit.
    """
    if not f:
        raise NotApplicable("common_divisor requires a nonzero element")
    dom = f.domain
    cs = f.coeffs
    if isinstance(dom, Natural):
        g = math.gcd(*cs)
        return None if g == 1 else g
    if any(dom.is_mult_unit(c) for c in cs):
        return None
    if isinstance(dom, NatPoly):
        base = min(cs, key=lambda c: (dom.phi(c), len(c), c))
        for d in dom.divisors(base):
            if dom.is_mult_unit(d):
                continue
            if all(_divides(dom, d, c) for c in cs):
                return d
        return None
    raise Unsupported(f"multiplicative gcd is not decided over {dom.kind}")


def _divides(dom, d, c) -> bool:
    e = dom.r_divexact(c, d)
    return e is not None and dom.r_in_semiring(e)


def coeff_gcd_is_unit(f: PolyExpr) -> bool:
    return common_divisor(f) is None


# --------------------------------------------------------------------------
# monolithicity


class MonolithicKind(str, enum.Enum):
    TOP_GAP_STRICT = "top-gap-strict"  # 2 g_1 < g_0 + g_n
    TOP_GAP_WIDE = "top-gap-wide"  # |supp| > 3 and 2 g_1 <= g_0 + g_n
    BOTTOM_GAP_STRICT = "bottom-gap-strict"  # 2 g_{n-1} > g_0 + g_n
    BOTTOM_GAP_WIDE = "bottom-gap-wide"  # |supp| > 3 and 2 g_{n-1} >= g_0 + g_n
    ORACLE_EXHAUSTED = "oracle-exhausted"
    NOT_MONOLITHIC = "not-monolithic"


@dataclass(frozen=True)
class MonolithicCertificate:
    kind: MonolithicKind
    candidates: int | None = None
    witness: tuple | None = None

    @property
    def monolithic(self) -> bool:
        return self.kind is not MonolithicKind.NOT_MONOLITHIC

    def to_json(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.candidates is not None:
            out["candidates"] = self.candidates
        if self.witness is not None:
            out["witness"] = [str(self.witness[0]), str(self.witness[1])]
        return out


def monolithic_sufficient(f: PolyExpr) -> MonolithicCertificate | None:
    """Try the two gap criteria; None means inconclusive."""
    if len(f) < 2:
        raise NotApplicable("monolithicity criteria need at least two terms")
    grp = f.group
    exps = f.support
    ends = grp.add(exps[0], exps[-1])
    hi = grp.double(exps[1])
    lo = grp.double(exps[-2])
    wide = len(exps) > 3
    if hi < ends:
        return MonolithicCertificate(MonolithicKind.TOP_GAP_STRICT)
    if wide and hi <= ends:
        return MonolithicCertificate(MonolithicKind.TOP_GAP_WIDE)
    if lo > ends:
        return MonolithicCertificate(MonolithicKind.BOTTOM_GAP_STRICT)
    if wide and lo >= ends:
        return MonolithicCertificate(MonolithicKind.BOTTOM_GAP_WIDE)
    return None


def _require_oracle_domain(f: PolyExpr):
    if not isinstance(f.domain, (Natural, NatPoly)):
        raise Unsupported(f"factor search is not available over {f.domain.kind}")
    if len(f) < 2:
        raise NotApplicable("factor search needs at least two terms")


def _exact_quotient(F: dict, p_terms: tuple, E: frozenset, dom, grp):
    """Quotient F / p in the enclosing ring, provided it lies in S[G] with support in E."""
    r = dict(F)
    lead_e, lead_c = p_terms[0]
    q = []
    while r:
        e = max(r)
        qe = grp.sub(e, lead_e)
        if qe not in E:
            return None
        qc = dom.r_divexact(r[e], lead_c)
        if qc is None or not dom.r_in_semiring(qc):
            return None
        q.append((qe, qc))
        for pe, pc in p_terms:
            k = grp.add(pe, qe)
            v = dom.r_sub(r.get(k, dom.zero), dom.r_mul(pc, qc))
            if dom.r_is_zero(v):
                r.pop(k, None)
            else:
                r[k] = v
    return tuple(q)


@functools.lru_cache(maxsize=None)
def _factor_pairs(f0: PolyExpr, limit: int) -> tuple[tuple, int]:
    """All (p, q) with f0 == p*q, p and q normalized and non-monomial.

    Every candidate p obeys constraints forced by the absence of cancellation
    in an additively reduced S:

    * supp(p) and supp(q) lie in supp(f0), and deg p, deg q sum to deg f0;
    * the end coefficients of p divide the end coefficients of f0;
    * for every exponent e of p, p_e * q_0 <= f_e and p_e * lc(q) <= f_{e + deg q}
      in the algebraic order of S, in particular p_e <= phi(f0).

    The search is therefore complete; q is recovered by exact division.
    """
    dom, grp = f0.domain, f0.group
    F = dict(f0.terms)
    E = frozenset(F)
    zero = grp.zero
    top = f0.degree
    one = dom.one

    plans = []
    total = 0
    for d in sorted(E):
        if d == zero or d == top:
            continue
        dq = grp.sub(top, d)
        if dq not in E:
            continue
        middles = [e for e in sorted(E) if zero < e < d and grp.add(e, dq) in E]
        p0s = dom.divisors(F[zero])
        pds = dom.divisors(F[top])
        size = len(p0s) * len(pds)
        for e in middles:
            size *= min(len(dom.below(F[e], one)), len(dom.below(F[grp.add(e, dq)], one)))
        total += size
        plans.append((d, dq, middles, p0s, pds))
    if total > limit:
        raise SearchLimitExceeded(f"factor search for {f0}", total, limit)

    found = {}
    examined = 0
    for d, dq, middles, p0s, pds in plans:
        for p0 in p0s:
            q0 = dom.r_divexact(F[zero], p0)
            for pd in pds:
                qt = dom.r_divexact(F[top], pd)
                options = []
                for e in middles:
                    hi_f = F[grp.add(e, dq)]
                    options.append(
                        [c for c in dom.below(F[e], q0) if dom.leq(dom.mul(c, qt), hi_f)]
                    )
                for mids in itertools.product(*options):
                    examined += 1
                    p_terms = [(d, pd)]
                    p_terms += [(e, c) for e, c in sorted(zip(middles, mids), reverse=True) if not dom.is_zero(c)]
                    p_terms.append((zero, p0))
                    p_terms = tuple(p_terms)
                    q_terms = _exact_quotient(F, p_terms, E, dom, grp)
                    if q_terms is None:
                        continue
                    p = PolyExpr(p_terms, dom, grp)
                    q = PolyExpr(q_terms, dom, grp)
                    a, b = sorted((p, q), key=str)
                    found[(str(a), str(b))] = (a, b)

    def order(pair):
        p = pair[0]
        return (len(p), p.support, tuple(dom.sort_key(c) for c in p.coeffs), str(pair[1]))

    return tuple(sorted(found.values(), key=order)), examined


def factor_search(f: PolyExpr, limit: int = FACTOR_SEARCH_LIMIT) -> list[tuple[PolyExpr, PolyExpr]]:
    """Every factorization f == p*q with neither factor a monomial.

    Pairs are reported up to monomial shifts: p is normalized (minimum
    exponent zero) and q carries the shift of f, so ``p * q == f`` exactly.
    """
    _require_oracle_domain(f)
    f0, shift = normalize(f)
    pairs, _ = _factor_pairs(f0, limit)
    return [(p, q.shift(shift)) for p, q in pairs]


def is_monolithic(f: PolyExpr, limit: int = FACTOR_SEARCH_LIMIT) -> tuple[bool, MonolithicCertificate]:
    cert = monolithic_sufficient(f)
    if cert is not None:
        return True, cert
    _require_oracle_domain(f)
    f0, shift = normalize(f)
    pairs, examined = _factor_pairs(f0, limit)
    if pairs:
        p, q = pairs[0]
        return False, MonolithicCertificate(MonolithicKind.NOT_MONOLITHIC, examined, (p, q.shift(shift)))
    return True, MonolithicCertificate(MonolithicKind.ORACLE_EXHAUSTED, examined)


# --------------------------------------------------------------------------
# irreducibility


@dataclass(frozen=True)
class IrreducibilityCertificate:
    irreducible: bool
    reason: str
    monolithic: MonolithicCertificate | None = None
    common_divisor: Any = None

    def to_json(self, domain: CoeffDomain | None = None) -> dict:
        out: dict = {"irreducible": self.irreducible, "reason": self.reason}
        if self.monolithic is not None:
            out["monolithic"] = self.monolithic.to_json()
        if self.common_divisor is not None:
            cd = self.common_divisor
            out["common_divisor"] = domain.fmt(cd) if domain is not None else str(cd)
        return out


def is_irreducible(f: PolyExpr, limit: int = FACTOR_SEARCH_LIMIT) -> tuple[bool, IrreducibilityCertificate]:
    """Decide irreducibility in S[G].

    With more than one term: irreducible iff monolithic and every common
    divisor of the coefficients is a unit. A single term s x^g is irreducible
    iff s is a multiplicative atom of S (x^g is a unit).
    """
    if not f:
        raise NotApplicable("is_irreducible requires a nonzero element")
    if is_unit_poly(f):
        raise NotApplicable(f"{f} is a unit")
    if len(f) == 1:
        c = f.terms[0][1]
        if f.domain.is_mult_atom(c):
            return True, IrreducibilityCertificate(True, "monomial-atom")
        return False, IrreducibilityCertificate(False, "monomial-composite")
    cd = common_divisor(f)
    if cd is not None:
        return False, IrreducibilityCertificate(False, "common-divisor", common_divisor=cd)
    mono, cert = is_monolithic(f, limit)
    if not mono:
        return False, IrreducibilityCertificate(False, "not-monolithic", monolithic=cert)
    return True, IrreducibilityCertificate(True, "monolithic-coprime", monolithic=cert)
