"""Team semantics of approximate exclusion atoms.

A team T satisfies the exact atom ``x | y`` when no value tuple occurs both
as some row's x-projection and as some row's y-projection (the two rows may
be the same row).  T satisfies ``x |_p y`` when removing at most p * |T|
rows leaves a team satisfying the exact atom.  min_removal computes the
smallest number of rows whose removal achieves this; it is exact, never an
estimate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import CapacityError, EmptyTeamError
from .model import Atom, ONE, Row, Team

DEFAULT_CHOICE_CAP = 20


# ==========================================================================
# raw-row engine, shared with the enumeration oracle
# ==========================================================================

def conflict_map(
    rows: Sequence[Row], left_idx: Sequence[int], right_idx: Sequence[int]
) -> dict[tuple[str, ...], tuple[set[int], set[int]]]:
    """Conflicting value tuples over distinct rows given projection columns.

    Maps each value tuple occurring on both sides to (A, B): the sets of row
    positions taking it on the left and on the right.
    """
    left_at: dict[tuple[str, ...], set[int]] = {}
    right_at: dict[tuple[str, ...], set[int]] = {}
    for pos, row in enumerate(rows):
        left_at.setdefault(tuple(row[i] for i in left_idx), set()).add(pos)
        right_at.setdefault(tuple(row[i] for i in right_idx), set()).add(pos)
    return {
        value: (left_at[value], right_at[value])
        for value in left_at.keys() & right_at.keys()
    }


def min_removal_indexed(
    rows: Sequence[Row],
    left_idx: Sequence[int],
    right_idx: Sequence[int],
    choice_cap: int = DEFAULT_CHOICE_CAP,
) -> int:
    """Smallest number of rows to delete so no conflicting value remains.

    A removal set works iff it contains every row that takes some value on
    both sides (such a row conflicts with itself) and, for each conflicting
    value, swallows its left occurrences or its right occurrences entirely.
    Forced rows are removed first; the remaining per-value side choices are
    enumerated exhaustively, capped at choice_cap binary choices.
    """
    conflicts = conflict_map(rows, left_idx, right_idx)
    if not conflicts:
        return 0
    forced: set[int] = set()
    for a, b in conflicts.values():
        forced |= a & b
    choices: list[tuple[frozenset[int], frozenset[int]]] = []
    for a, b in conflicts.values():
        a_rest = frozenset(a - forced)
        b_rest = frozenset(b - forced)
        if a_rest and b_rest:
            choices.append((a_rest, b_rest))
    if not choices:
        return len(forced)
    if len(choices) > choice_cap:
        raise CapacityError(
            f"{len(choices)} interdependent removal choices exceed cap {choice_cap}"
        )
    best = len(rows)
    for picks in product(*choices):
        removed: set[int] = set()
        for side in picks:
            removed |= side
        best = min(best, len(removed))
    return len(forced) + best


# ==========================================================================
# public API over Team and Atom
# ==========================================================================

@dataclass(frozen=True)
class Conflict:
    """One conflicting value tuple with its witnessing rows."""

    value: tuple[str, ...]
    left_rows: tuple[Row, ...]
    right_rows: tuple[Row, ...]


@dataclass(frozen=True)
class ConflictReport:
    """All conflicts of a team against an atom's sides (degree ignored)."""

    atom: Atom
    conflicts: tuple[Conflict, ...]

    @property
    def satisfied(self) -> bool:
        """True when the exact atom holds, i.e. there are no conflicts."""
        return not self.conflicts

    def conflicting_values(self) -> frozenset[tuple[str, ...]]:
        return frozenset(c.value for c in self.conflicts)

    def witness_pairs(self) -> dict[tuple[str, ...], tuple[tuple[Row, ...], tuple[Row, ...]]]:
        return {c.value: (c.left_rows, c.right_rows) for c in self.conflicts}


def _columns(team: Team, atom: Atom) -> tuple[tuple[int, ...], tuple[int, ...], list[Row]]:
    left_idx = tuple(team.column(v) for v in atom.left)
    right_idx = tuple(team.column(v) for v in atom.right)
    return left_idx, right_idx, sorted(team.rows)


def conflict_report(team: Team, atom: Atom) -> ConflictReport:
    """Every value tuple occurring as both an x-value and a y-value."""
    left_idx, right_idx, rows = _columns(team, atom)
    conflicts = conflict_map(rows, left_idx, right_idx)
    entries = tuple(
        Conflict(
            value,
            tuple(rows[i] for i in sorted(a)),
            tuple(rows[i] for i in sorted(b)),
        )
        for value, (a, b) in sorted(conflicts.items())
    )
    return ConflictReport(atom, entries)


def satisfies_exact(team: Team, atom: Atom) -> bool:
    """Exact exclusion of the atom's sides; the degree is not consulted."""
    left_idx, right_idx, rows = _columns(team, atom)
    return not conflict_map(rows, left_idx, right_idx)


def min_removal(team: Team, atom: Atom, choice_cap: int = DEFAULT_CHOICE_CAP) -> int:
    """Fewest rows to delete so the exact atom holds on the remainder."""
    left_idx, right_idx, rows = _columns(team, atom)
    return min_removal_indexed(rows, left_idx, right_idx, choice_cap)


def satisfies(team: Team, atom: Atom, choice_cap: int = DEFAULT_CHOICE_CAP) -> bool:
    """Whether the team satisfies the atom at its degree.

    Degree 1 holds vacuously.  Otherwise the removal budget is
    degree * |T|, compared exactly by cross multiplication.
    """
    if atom.degree == ONE:
        return True
    rem = min_removal(team, atom, choice_cap)
    p = atom.degree
    return rem * p.denominator <= p.numerator * team.size


def min_degree(team: Team, atom: Atom, choice_cap: int = DEFAULT_CHOICE_CAP) -> Fraction:
    """Smallest degree at which the team satisfies the atom's sides.

    Undefined on the empty team (every degree works there).
    """
    if team.is_empty():
        raise EmptyTeamError("min_degree is undefined on the empty team")
    return Fraction(min_removal(team, atom, choice_cap), team.size)


def satisfies_all(team: Team, atoms: Sequence[Atom], choice_cap: int = DEFAULT_CHOICE_CAP) -> bool:
    """Whether the team satisfies every atom in the list."""
    return all(satisfies(team, a, choice_cap) for a in atoms)
