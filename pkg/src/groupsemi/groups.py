"""Totally ordered torsion-free abelian groups used as exponent groups.

``IntGroup`` is Z with its usual order; ``IntVecGroup(n)`` is Z^n under the
lexicographic order. Elements are plain ``int`` / ``tuple`` values, so the
built-in comparison operators already implement the group order.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass

from .errors import DomainMismatch


class Group:
    name: str = ""
    zero: object = None

    def check(self, a):
        raise NotImplementedError

    def add(self, a, b):
        raise NotImplementedError

    def neg(self, a):
        raise NotImplementedError

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def double(self, a):
        return self.add(a, a)

    def scale(self, n: int, a):
        raise NotImplementedError

    def cmp(self, a, b) -> int:
        self.check(a)
        self.check(b)
        return (a > b) - (a < b)

    def fmt(self, a) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class IntGroup(Group):
    name = "z"
    zero = 0

    def check(self, a):
        if type(a) is not int:
            raise DomainMismatch(f"{a!r} is not an element of Z")
        return a

    add = staticmethod(operator.add)
    neg = staticmethod(operator.neg)
    sub = staticmethod(operator.sub)

    def scale(self, n, a):
        return n * a

    def fmt(self, a):
        return f"({a})" if a < 0 else str(a)


@dataclass(frozen=True)
class IntVecGroup(Group):
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("Z^n needs n >= 1")

    @property
    def name(self):
        return f"zvec:{self.n}"

    @property
    def zero(self):
        return (0,) * self.n

    def check(self, a):
        if type(a) is not tuple or len(a) != self.n or any(type(x) is not int for x in a):
            raise DomainMismatch(f"{a!r} is not an element of Z^{self.n}")
        return a

    def add(self, a, b):
        if len(a) != self.n or len(b) != self.n:
            raise DomainMismatch(f"dimension mismatch: {a!r} + {b!r} in Z^{self.n}")
        return tuple(x + y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in self.check(a))

    def sub(self, a, b):
        if len(a) != self.n or len(b) != self.n:
            raise DomainMismatch(f"dimension mismatch: {a!r} - {b!r} in Z^{self.n}")
        return tuple(x - y for x, y in zip(a, b))

    def scale(self, n, a):
        return tuple(n * x for x in a)

    def fmt(self, a):
        return "(" + ",".join(str(x) for x in a) + ")"


def parse_group(spec: str) -> Group:
    """``z`` | ``zvec:N``."""
    spec = spec.strip().lower()
    if spec == "z":
        return IntGroup()
    if spec.startswith("zvec:"):
        try:
            return IntVecGroup(int(spec[5:]))
        except ValueError:
            raise ValueError(f"bad group descriptor {spec!r}; expected zvec:N") from None
    raise ValueError(f"unknown group {spec!r}")
