"""Brute-force semantic implication over bounded team spaces.

The oracle enumerates every team within given row and value bounds and
checks the implication directly against the semantics.  It is the slow,
trustworthy reference the fast decision procedure is compared against.

Two enumeration modes:

* full: every team whose cells come from {1..max_values}, including the
  empty team.  The space is counted up front and refused beyond a budget.
* canonical: one representative per value-renaming class.  Satisfaction of
  exclusion atoms only compares values for equality, so it is invariant
  under renaming and checking representatives suffices.  A representative
  is a team whose rows, sorted, read off a restricted growth string: cells
  scanned row-major introduce values 1, 2, 3, ... in order.  Every team
  can be relabeled into this shape: among all relabelings, the one with
  the lexicographically least sorted row sequence is in it (if a scan
  introduced a value out of order, swapping it with the expected label
  would shrink the sequence).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .counterexample import _ordered_vars, domain_size_bound, plan as counterexample_plan
from .errors import CapacityError
from .model import Atom, Team
from .semantics import min_removal_indexed

DEFAULT_BUDGET = 10_000_000

IntRow = tuple[int, ...]
RowSet = tuple[IntRow, ...]


def full_space_size(n_vars: int, max_rows: int, max_values: int) -> int:
    """Number of teams with cells in {1..max_values} and at most max_rows rows."""
    cells = max_values**n_vars
    return sum(math.comb(cells, i) for i in range(max_rows + 1))


def _full_sets(
    n_vars: int, max_rows: int, max_values: int, budget: int
) -> Iterator[RowSet]:
    total = full_space_size(n_vars, max_rows, max_values)
    if total > budget:
        raise CapacityError(
            f"full enumeration has {total} teams, over the budget of {budget}"
        )
    cells = list(product(range(1, max_values + 1), repeat=n_vars))
    for size in range(max_rows + 1):
        yield from combinations(cells, size)


def _canonical_sets(
    n_vars: int, max_rows: int, max_values: int, budget: int
) -> Iterator[RowSet]:
    yielded = 0

    def guard() -> None:
        nonlocal yielded
        yielded += 1
        if yielded > budget:
            raise CapacityError(
                f"canonical enumeration passed the budget of {budget} teams"
            )

    def rows_after(last: IntRow | None, m0: int) -> Iterator[tuple[IntRow, int]]:
        # rows lexicographically greater than last whose cells extend the
        # restricted growth string with running maximum m0
        def rec(
            i: int, prefix: list[int], m: int, tight: bool
        ) -> Iterator[tuple[IntRow, int]]:
            if i == n_vars:
                if not tight:
                    yield tuple(prefix), m
                return
            for c in range(1, min(m + 1, max_values) + 1):
                if tight and c < last[i]:
                    continue
                prefix.append(c)
                yield from rec(i + 1, prefix, max(m, c), tight and c == last[i])
                prefix.pop()

        return rec(0, [], m0, last is not None)

    def extend(rows: RowSet, m: int) -> Iterator[RowSet]:
        for row, m2 in rows_after(rows[-1] if rows else None, m):
            team = rows + (row,)
            guard()
            yield team
            if len(team) < max_rows:
                yield from extend(team, m2)

    guard()
    yield ()
    if max_rows > 0:
        yield from extend((), 0)


def enumerate_row_sets(
    n_vars: int,
    max_rows: int,
    max_values: int,
    canonical: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[RowSet]:
    """Teams as sorted tuples of distinct int rows, smallest spaces first."""
    if n_vars < 0 or max_rows < 0 or max_values < 0:
        raise ValueError("bounds must be nonnegative")
    if canonical:
        return _canonical_sets(n_vars, max_rows, max_values, budget)
    return _full_sets(n_vars, max_rows, max_values, budget)


def enumerate_teams(
    schema: Sequence[str],
    max_rows: int,
    max_values: int,
    canonical: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> Iterator[Team]:
    """The bounded team space over the given schema, as Team values."""
    schema = tuple(schema)
    for rows in enumerate_row_sets(
        len(schema), max_rows, max_values, canonical=canonical, budget=budget
    ):
        yield Team(schema, frozenset(tuple(str(c) for c in row) for row in rows))


@dataclass(frozen=True)
class OracleResult:
    """Verdict of a bounded semantic check."""

    implied: bool
    counterexample: Team | None
    teams_checked: int

    def __bool__(self) -> bool:
        return self.implied


def default_bounds(sigma: Sequence[Atom], goal: Atom) -> tuple[int, int]:
    """Row and value bounds within which a refutation must appear, if any."""
    cxp = counterexample_plan(tuple(sigma), goal)
    return cxp.k, domain_size_bound(cxp)


def oracle_implies(
    sigma: Iterable[Atom],
    goal: Atom,
    max_rows: int,
    max_values: int,
    canonical: bool = True,
    budget: int = DEFAULT_BUDGET,
) -> OracleResult:
    """Search the bounded space for a team separating sigma from the goal."""
    sigma = tuple(sigma)
    schema, _ = _ordered_vars(sigma, goal)
    col = {v: i for i, v in enumerate(schema)}

    def indexed(atom: Atom) -> tuple[list[int], list[int]]:
        return [col[v] for v in atom.left], [col[v] for v in atom.right]

    constraints = [(*indexed(a), a.degree) for a in sigma]
    goal_left, goal_right = indexed(goal)
    p = goal.degree

    checked = 0
    for rows in enumerate_row_sets(
        len(schema), max_rows, max_values, canonical=canonical, budget=budget
    ):
        checked += 1
        size = len(rows)
        satisfied = True
        for left_idx, right_idx, q in constraints:
            removed = min_removal_indexed(rows, left_idx, right_idx)
            if removed * q.denominator > q.numerator * size:
                satisfied = False
                break
        if not satisfied:
            continue
        removed = min_removal_indexed(rows, goal_left, goal_right)
        if removed * p.denominator > p.numerator * size:
            team = Team(
                schema, frozenset(tuple(str(c) for c in row) for row in rows)
            )
            return OracleResult(False, team, checked)
    return OracleResult(True, None, checked)
