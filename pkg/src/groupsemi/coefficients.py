"""Coefficient semidomains S.

Three kinds are provided, all additively reduced and additively Furstenberg:

* ``Natural``: the naturals N_0, where additive atoms and units coincide ({1}).
* ``NatPoly``: N_0[t]; every monomial t^k is an additive atom but only 1 is a
  unit, so unit splits are not always available.
* ``Spq(p, q)``: N_0[A, B] with A = q/(p+q) and B = q^2/(p^2+pq), kept as
  formal N_0-combinations of A^n B^m and compared by exact rational value.

Values are plain immutable Python objects (``int`` or tuples) and every
operation goes through the domain object, which validates its operands.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Any, Iterator, NamedTuple

from sympy import divisors as _int_divisors
from sympy import isprime

from .errors import DomainMismatch, SearchLimitExceeded, Unsupported

ENUM_LIMIT = 10**6


class UnitSplit(NamedTuple):
    """``value == u + v`` with ``u`` a multiplicative unit and ``v`` possibly zero."""

    u: Any
    v: Any


class CoeffDomain:
    """Interface shared by the coefficient semidomains."""

    kind: str = ""
    additively_reduced = True
    atoms_equal_units = False

    zero: Any = None
    one: Any = None

    def check(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def is_zero(self, a) -> bool:
        return self.check(a) == self.zero

    def equal(self, a, b) -> bool:
        return self.key(a) == self.key(b)

    def key(self, a):
        """Hashable canonical key; equal keys mean equal elements of S."""
        return self.check(a)

    def sort_key(self, a):
        return self.key(a)

    def is_mult_unit(self, a) -> bool:
        raise NotImplementedError

    def is_additive_atom(self, a) -> bool:
        raise NotImplementedError

    def unit_split(self, a) -> UnitSplit | None:
        raise NotImplementedError

    def furstenberg_split(self, a) -> tuple[Any, Any]:
        raise NotImplementedError

    def is_mult_atom(self, a) -> bool:
        raise Unsupported(f"multiplicative atoms of {self.kind} are not decided")

    def fmt(self, a) -> str:
        raise NotImplementedError

    def is_simple(self, a) -> bool:
        """True when ``fmt(a)`` is a bare integer (printed juxtaposed with x)."""
        return False

    # Embedding into the enclosing integral domain, used by the factor oracle.
    # Only Natural and NatPoly implement these.

    def phi(self, a) -> int:
        raise Unsupported(f"no evaluation to N_0 for {self.kind}")

    def leq(self, a, b) -> bool:
        raise Unsupported(f"no algebraic order for {self.kind}")

    def divisors(self, a) -> list:
        raise Unsupported(f"divisor enumeration is not available for {self.kind}")

    def below(self, s, factor) -> list:
        raise Unsupported(f"bounded enumeration is not available for {self.kind}")

    def r_sub(self, a, b):
        raise Unsupported(self.kind)

    def r_mul(self, a, b):
        raise Unsupported(self.kind)

    def r_divexact(self, a, b):
        raise Unsupported(self.kind)

    def r_in_semiring(self, r) -> bool:
        raise Unsupported(self.kind)

    def r_is_zero(self, r) -> bool:
        raise Unsupported(self.kind)

    def _require_nonzero(self, a, what):
        if self.is_zero(a):
            raise ValueError(f"{what} requires a nonzero element")


# --------------------------------------------------------------------------
# N_0


@dataclass(frozen=True)
class Natural(CoeffDomain):
    kind = "nat"
    atoms_equal_units = True
    zero = 0
    one = 1

    def check(self, a):
        if type(a) is not int or a < 0:
            raise DomainMismatch(f"{a!r} is not an element of N_0")
        return a

    def add(self, a, b):
        return self.check(a) + self.check(b)

    def mul(self, a, b):
        return self.check(a) * self.check(b)

    def is_mult_unit(self, a):
        return self.check(a) == 1

    def is_additive_atom(self, a):
        self._require_nonzero(a, "is_additive_atom")
        return a == 1

    def unit_split(self, a):
        self._require_nonzero(a, "unit_split")
        return UnitSplit(1, a - 1)

    def furstenberg_split(self, a):
        self._require_nonzero(a, "furstenberg_split")
        return 1, a - 1

    def is_mult_atom(self, a):
        return isprime(self.check(a))

    def fmt(self, a):
        return str(a)

    def is_simple(self, a):
        return True

    def phi(self, a):
        return a

    def leq(self, a, b):
        return a <= b

    def divisors(self, a):
        self._require_nonzero(a, "divisors")
        return [int(d) for d in _int_divisors(a)]

    def below(self, s, factor):
        return list(range(s // factor + 1))

    def r_sub(self, a, b):
        return a - b

    def r_mul(self, a, b):
        return a * b

    def r_divexact(self, a, b):
        q, r = divmod(a, b)
        return None if r else q

    def r_in_semiring(self, r):
        return r > 0

    def r_is_zero(self, r):
        return r == 0


# --------------------------------------------------------------------------
# N_0[t], dense coefficient tuples indexed by degree


def _trim(v) -> tuple:
    v = list(v)
    while v and v[-1] == 0:
        v.pop()
    return tuple(v)


def _zt_add(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n))


def _zt_sub(a, b):
    n = max(len(a), len(b))
    return _trim((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n))


def _zt_mul(a, b):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def _zt_divexact(a, b):
    """Exact quotient a / b in Z[t], or None."""
    if not b:
        raise ZeroDivisionError
    r = list(a)
    if not r:
        return ()
    db = len(b) - 1
    if len(r) - 1 < db:
        return None
    quot = [0] * (len(r) - db)
    for k in range(len(r) - 1, db - 1, -1):
        c = r[k]
        if c == 0:
            continue
        qc, rem = divmod(c, b[-1])
        if rem:
            return None
        quot[k - db] = qc
        for j, y in enumerate(b):
            r[k - db + j] -= qc * y
    if any(r):
        return None
    return _trim(quot)


def _vectors(max_len: int, max_sum: int) -> Iterator[tuple]:
    """All trimmed nonnegative integer vectors of length <= max_len and sum <= max_sum."""
    size = comb(max_sum + max_len, max_len)
    if size > ENUM_LIMIT:
        raise SearchLimitExceeded("N_0[t] coefficient enumeration", size, ENUM_LIMIT)

    def rec(prefix, left, budget):
        if left == 0:
            yield _trim(prefix)
            return
        for c in range(budget + 1):
            yield from rec(prefix + (c,), left - 1, budget - c)

    yield from rec((), max(max_len, 0), max_sum)


@dataclass(frozen=True)
class NatPoly(CoeffDomain):
    kind = "natpoly"
    zero = ()
    one = (1,)

    def check(self, a):
        if type(a) is not tuple or any(type(c) is not int or c < 0 for c in a) or (a and a[-1] == 0):
            raise DomainMismatch(f"{a!r} is not a canonical element of N_0[t]")
        return a

    @staticmethod
    def from_coeffs(cs) -> tuple:
        """Dense coefficient list, constant first, with trailing zeros dropped."""
        return _trim(int(c) for c in cs)

    @staticmethod
    def monomial(k: int, c: int = 1) -> tuple:
        return (0,) * k + (c,) if c else ()

    def add(self, a, b):
        return _zt_add(self.check(a), self.check(b))

    def mul(self, a, b):
        return _zt_mul(self.check(a), self.check(b))

    def is_mult_unit(self, a):
        return self.check(a) == (1,)

    def is_additive_atom(self, a):
        self._require_nonzero(a, "is_additive_atom")
        return sum(a) == 1

    def unit_split(self, a):
        self._require_nonzero(a, "unit_split")
        if a[0] >= 1:
            return UnitSplit((1,), _trim((a[0] - 1,) + a[1:]))
        return None

    def furstenberg_split(self, a):
        self._require_nonzero(a, "furstenberg_split")
        lead = self.monomial(len(a) - 1)
        return lead, _trim(a[:-1] + (a[-1] - 1,))

    def is_mult_atom(self, a):
        self._require_nonzero(a, "is_mult_atom")
        if a == (1,):
            return False
        return all(d in ((1,), a) for d in self.divisors(a))

    def fmt(self, a):
        if not a:
            return "0"
        parts = []
        for k in range(len(a) - 1, -1, -1):
            c = a[k]
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
            else:
                mono = "t" if k == 1 else f"t^{k}"
                parts.append(mono if c == 1 else f"{c}{mono}")
        return "+".join(parts)

    def is_simple(self, a):
        return len(a) <= 1

    def phi(self, a):
        return sum(a)

    def leq(self, a, b):
        return len(a) <= len(b) and all(x <= b[i] for i, x in enumerate(a))

    def divisors(self, a):
        self._require_nonzero(a, "divisors")
        total = sum(a)
        out = []
        for d in _vectors(len(a), total):
            if d and total % sum(d) == 0:
                e = _zt_divexact(a, d)
                if e is not None and all(c >= 0 for c in e):
                    out.append(d)
        return sorted(out, key=lambda v: (len(v), v))

    def below(self, s, factor):
        room = len(s) - len(factor) + 1
        if room <= 0:
            return [()]
        cap = sum(s) // sum(factor)
        return [c for c in _vectors(room, cap) if self.leq(_zt_mul(c, factor), s)]

    def r_sub(self, a, b):
        return _zt_sub(a, b)

    def r_mul(self, a, b):
        return _zt_mul(a, b)

    def r_divexact(self, a, b):
        return _zt_divexact(a, b)

    def r_in_semiring(self, r):
        return bool(r) and all(c >= 0 for c in r)

    def r_is_zero(self, r):
        return not r


# --------------------------------------------------------------------------
# S_pq = N_0[q/(p+q), q^2/(p^2+pq)], formal combinations of A^n B^m


def spq_hypothesis_holds(p: int, q: int) -> bool:
    """q/p > (1+sqrt 5)/2, in the integer form q^2 > p^2 + pq."""
    return q * q > p * p + p * q


@dataclass(frozen=True)
class Spq(CoeffDomain):
    p: int
    q: int
    kind = "spq"
    zero = ()
    one = (((0, 0), 1),)

    def __post_init__(self):
        if not (isprime(self.p) and isprime(self.q)):
            raise ValueError(f"S_pq needs primes, got p={self.p}, q={self.q}")
        if not spq_hypothesis_holds(self.p, self.q):
            raise ValueError(f"S_pq needs q^2 > p^2 + pq, got p={self.p}, q={self.q}")

    @property
    def A(self) -> Fraction:
        return Fraction(self.q, self.p + self.q)

    @property
    def B(self) -> Fraction:
        return Fraction(self.q * self.q, self.p * self.p + self.p * self.q)

    @staticmethod
    def from_dict(d: dict) -> tuple:
        return tuple(sorted((nm, c) for nm, c in d.items() if c))

    @staticmethod
    def gen(n: int, m: int, c: int = 1) -> tuple:
        return (((n, m), c),) if c else ()

    def check(self, a):
        if type(a) is not tuple:
            raise DomainMismatch(f"{a!r} is not a formal S_pq element")
        prev = None
        for item in a:
            try:
                (n, m), c = item
            except (TypeError, ValueError):
                raise DomainMismatch(f"{a!r} is not a formal S_pq element") from None
            if not all(type(x) is int for x in (n, m, c)) or n < 0 or m < 0 or c <= 0:
                raise DomainMismatch(f"{a!r} is not a formal S_pq element")
            if prev is not None and (n, m) <= prev:
                raise DomainMismatch(f"{a!r} is not canonically ordered")
            prev = (n, m)
        return a

    def gen_value(self, n: int, m: int) -> Fraction:
        p, q = self.p, self.q
        return Fraction(q ** (n + 2 * m), (p + q) ** (n + m) * p**m)

    def value(self, a) -> Fraction:
        return sum((c * self.gen_value(n, m) for (n, m), c in self.check(a)), Fraction(0))

    def key(self, a):
        return self.value(a)

    def sort_key(self, a):
        return (self.value(a), self.check(a))

    def add(self, a, b):
        d = dict(self.check(a))
        for nm, c in self.check(b):
            d[nm] = d.get(nm, 0) + c
        return self.from_dict(d)

    def mul(self, a, b):
        d: dict = {}
        for (n1, m1), c1 in self.check(a):
            for (n2, m2), c2 in self.check(b):
                nm = (n1 + n2, m1 + m2)
                d[nm] = d.get(nm, 0) + c1 * c2
        return self.from_dict(d)

    def is_mult_unit(self, a):
        return self.value(a) == 1

    def a_power_exponent(self, a) -> int | None:
        """k with value(a) == A^k, else None."""
        v = self.value(a)
        if v <= 0:
            return None
        num, den = v.numerator, v.denominator
        k = 0
        while num % self.q == 0:
            num //= self.q
            k += 1
        if num != 1 or den != (self.p + self.q) ** k:
            return None
        return k

    def is_additive_atom(self, a):
        self._require_nonzero(a, "is_additive_atom")
        return self.a_power_exponent(a) is not None

    def unit_split(self, a):
        self._require_nonzero(a, "unit_split")
        d = dict(a)
        if d.get((0, 0), 0) < 1:
            return None
        d[(0, 0)] -= 1
        return UnitSplit(self.one, self.from_dict(d))

    def furstenberg_split(self, a):
        from .spq import rewrite_to_pure_power

        self._require_nonzero(a, "furstenberg_split")
        rewritten, _ = rewrite_to_pure_power(self, a)
        n = min(n for (n, m), _c in rewritten if m == 0)
        d = dict(rewritten)
        d[(n, 0)] -= 1
        return self.gen(n, 0), self.from_dict(d)

    def fmt(self, a):
        if not a:
            return "0"
        parts = []
        for (n, m), c in sorted(self.check(a), key=lambda t: (-(t[0][0] + t[0][1]), -t[0][0])):
            syms = []
            if n:
                syms.append("A" if n == 1 else f"A^{n}")
            if m:
                syms.append("B" if m == 1 else f"B^{m}")
            if not syms:
                parts.append(str(c))
            else:
                parts.append("*".join(([str(c)] if c != 1 else []) + syms))
        return "+".join(parts)

    def is_simple(self, a):
        return len(a) == 1 and a[0][0] == (0, 0)


def parse_domain(spec: str) -> CoeffDomain:
    """``nat`` | ``natpoly`` | ``spq:P,Q``."""
    spec = spec.strip().lower()
    if spec in ("nat", "natural"):
        return Natural()
    if spec == "natpoly":
        return NatPoly()
    if spec.startswith("spq:"):
        try:
            p, q = (int(x) for x in spec[4:].split(","))
        except ValueError:
            raise ValueError(f"bad S_pq descriptor {spec!r}; expected spq:P,Q") from None
        return Spq(p, q)
    raise ValueError(f"unknown coefficient domain {spec!r}")
