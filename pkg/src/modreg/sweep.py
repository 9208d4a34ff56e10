"""Theorem-versus-oracle consistency sweeps over finite abelian groups.

The sweep enumerates one representative per isomorphism class (a choice of
partition per prime in the order's factorization), classifies it at the
descriptor level, re-derives the same verdicts from the element-level
oracle, and reports any disagreement.  Capacity overruns are reported as
skips, never as mismatches.  Virtual regularity is compared for every class
up to ``max_order``; the lattice-heavy predicates (strong / complete virtual
regularity and strong regularity) are compared up to ``deep_max_order``.
"""

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .abgroups import (
    FgAbGroup,
    PrimaryData,
    classify,
    invariant_factors_from_primary,
    is_torsion_semisimple,
)
from .errors import CapacityError, DomainError
from .intarith import factorize
from .oracle import (
    FiniteGroupInstance,
    full_subgroup,
    oracle_completely_vr,
    oracle_strongly_regular,
    oracle_strongly_vr,
    oracle_virtually_regular,
)

DEFAULT_DEEP_MAX_ORDER = 64


def partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Integer partitions of n in decreasing-part form (n = 0 gives ())."""
    if n == 0:
        yield ()
        return
    stack = [(n, n, ())]
    while stack:
        remaining, largest, prefix = stack.pop()
        for part in range(min(remaining, largest), 0, -1):
            rest = remaining - part
            if rest == 0:
                yield prefix + (part,)
            else:
                stack.append((rest, part, prefix + (part,)))


def torsion_classes(max_order: int) -> list[FgAbGroup]:
    """Every isomorphism class of finite abelian groups of order <= max_order,
    sorted by order then by invariant-factor tuple."""
    out = []
    for n in range(1, max_order + 1):
        per_prime = [
            [(p, partition) for partition in partitions(e)]
            for p, e in sorted(factorize(n).factors.items())
        ]
        for combo in itertools.product(*per_prime):
            primary = PrimaryData({p: tuple(sorted(part)) for p, part in combo})
            out.append(invariant_factors_from_primary(primary, 0))
    out.sort(key=lambda g: (g.torsion_order, g.invariant_factors))
    return out


@dataclass(frozen=True)
class Mismatch:
    order: int
    module: str
    predicate: str
    theorem_value: bool
    oracle_value: bool


@dataclass(frozen=True)
class Skip:
    order: int
    module: str
    predicate: str
    reason: str


@dataclass
class SweepReport:
    max_order: int
    deep_max_order: int
    classes_checked: int = 0
    deep_classes_checked: int = 0
    mismatches: list[Mismatch] = field(default_factory=list)
    skipped: list[Skip] = field(default_factory=list)

    @property
    def consistent(self) -> bool:
        return not self.mismatches


def run_sweep(
    max_order: int,
    *,
    deep_max_order: int | None = None,
    order_cap: int | None = None,
    subgroup_cap: int | None = None,
) -> SweepReport:
    if max_order < 1:
        raise DomainError(f"max_order must be >= 1, got {max_order}")
    deep = DEFAULT_DEEP_MAX_ORDER if deep_max_order is None else deep_max_order
    report = SweepReport(max_order=max_order, deep_max_order=deep)

    for group in torsion_classes(max_order):
        order = group.torsion_order
        name = group.describe()
        verdict = classify(group)
        report.classes_checked += 1

        instance = FiniteGroupInstance(group.invariant_factors)
        try:
            whole = full_subgroup(instance, order_cap=order_cap)
        except CapacityError as exc:
            report.skipped.append(Skip(order, name, "(all)", str(exc)))
            continue

        vr_oracle, _ = oracle_virtually_regular(whole)
        if vr_oracle != verdict.virtually_regular:
            report.mismatches.append(
                Mismatch(order, name, "virtually_regular", verdict.virtually_regular, vr_oracle)
            )

        if order > deep:
            continue
        report.deep_classes_checked += 1
        deep_checks = (
            (
                "strongly_virtually_regular",
                oracle_strongly_vr,
                verdict.strongly_virtually_regular,
            ),
            (
                "completely_virtually_regular",
                oracle_completely_vr,
                verdict.completely_virtually_regular,
            ),
            ("strongly_regular", oracle_strongly_regular, is_torsion_semisimple(group)),
        )
        for predicate, fn, expected in deep_checks:
            try:
                got = fn(whole, subgroup_cap)
            except CapacityError as exc:
                report.skipped.append(Skip(order, name, predicate, str(exc)))
                continue
            if got != expected:
                report.mismatches.append(Mismatch(order, name, predicate, expected, got))

    return report
