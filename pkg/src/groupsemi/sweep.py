"""Exhaustive desk-scale sweeps cross-checking the constructions against the oracle."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .coefficients import Natural
from .goldbach import goldbach_decompose
from .groups import IntGroup, IntVecGroup
from .polyexpr import (
    PolyExpr,
    coeff_gcd_is_unit,
    factor_search,
    is_irreducible,
    monolithic_sufficient,
)


def natural_instances(max_exp: int = 5, max_coeff: int = 4):
    """Every f over N_0 with supp(f) in [0..max_exp], coefficients in [1..max_coeff], |supp| >= 2."""
    dom, grp = Natural(), IntGroup()
    exps = range(max_exp, -1, -1)
    for k in range(2, max_exp + 2):
        for supp in itertools.combinations(exps, k):
            for cs in itertools.product(range(1, max_coeff + 1), repeat=k):
                yield PolyExpr(tuple(zip(supp, cs)), dom, grp)


def random_lex_instances(count: int = 500, radius: int = 3, max_coeff: int = 3, max_terms: int = 6, seed: int = 0):
    """Random f over N_0[Z^2] with exponents in [-radius..radius]^2 under lex order."""
    rng = random.Random(seed)
    dom, grp = Natural(), IntVecGroup(2)
    cells = [(a, b) for a in range(-radius, radius + 1) for b in range(-radius, radius + 1)]
    for _ in range(count):
        k = rng.randint(2, max_terms)
        supp = rng.sample(cells, k)
        yield PolyExpr.from_terms([(e, rng.randint(1, max_coeff)) for e in supp], dom, grp)


def is_exception_form(f: PolyExpr) -> bool:
    """Binomial with a unit coefficient, or trinomial of three units."""
    unit = f.domain.is_mult_unit
    if len(f) == 2:
        return any(unit(c) for c in f.coeffs)
    if len(f) == 3:
        return all(unit(c) for c in f.coeffs)
    return False


def oracle_irreducible(f: PolyExpr) -> bool:
    """Irreducibility from the complete factor search plus the coefficient gcd."""
    return len(f) > 1 and not factor_search(f) and coeff_gcd_is_unit(f)


@dataclass
class SweepReport:
    instances: int = 0
    decomposed: int = 0
    single: int = 0
    oracle_verified: int = 0
    failures: list = field(default_factory=list)
    exception_mismatches: list = field(default_factory=list)
    equivalence_mismatches: list = field(default_factory=list)
    criterion_counterexamples: list = field(default_factory=list)
    criterion_fired: int = 0

    @property
    def ok(self) -> bool:
        return not (
            self.failures or self.exception_mismatches or self.equivalence_mismatches or self.criterion_counterexamples
        )

    def rows(self) -> list[tuple[str, int]]:
        return [
            ("instances", self.instances),
            ("decomposed", self.decomposed),
            ("1-summand exceptions", self.single),
            ("oracle-verified", self.oracle_verified),
            ("failures", len(self.failures)),
            ("exception mismatches", len(self.exception_mismatches)),
            ("irreducibility mismatches", len(self.equivalence_mismatches)),
            ("criterion counterexamples", len(self.criterion_counterexamples)),
        ]


def check_instance(f: PolyExpr, report: SweepReport, cross_checks: bool = True) -> None:
    report.instances += 1
    try:
        dec = goldbach_decompose(f, certify=False)
    except Exception as exc:  # recorded, not raised: the sweep reports every failure
        report.failures.append(f"{f}: {type(exc).__name__}: {exc}")
        return
    report.decomposed += 1
    if len(dec) == 1:
        report.single += 1
    if dec.total() != f:
        report.failures.append(f"{f}: summands {[str(s) for s in dec.summands]} do not add up")
    if not 1 <= len(dec) <= 2:
        report.failures.append(f"{f}: {len(dec)} summands")
    if (len(dec) == 1) != is_exception_form(f):
        report.exception_mismatches.append(str(f))
    bad = [str(s) for s in dec.summands if not oracle_irreducible(s)]
    if bad:
        report.failures.append(f"{f}: reducible summands {bad}")
    else:
        report.oracle_verified += 1
    if not cross_checks:
        return
    reducible_by_oracle = bool(factor_search(f))
    expected = not reducible_by_oracle and coeff_gcd_is_unit(f)
    if is_irreducible(f)[0] != expected:
        report.equivalence_mismatches.append(str(f))
    if monolithic_sufficient(f) is not None:
        report.criterion_fired += 1
        if reducible_by_oracle:
            report.criterion_counterexamples.append(str(f))


def run_sweep(instances, cross_checks: bool = True) -> SweepReport:
    report = SweepReport()
    for f in instances:
        check_instance(f, report, cross_checks)
    return report
