"""Core data model: variable tuples, approximate exclusion atoms, teams.

An atom ``x |_p y`` pairs two equal-length variable tuples with a rational
degree p in [0, 1].  Degree 0 is the exact atom (no value may occur both as
an x-value and as a y-value anywhere in the team); degree p relaxes this to
"some subteam of at most p * |T| rows can be removed to make it exact".

A team is a finite set of assignments over a fixed schema of variables.
Rows are value tuples aligned with the schema.  Values are opaque strings
compared by equality only; degrees are exact rationals, never floats.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

VarTuple = tuple[str, ...]
Row = tuple[str, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_degree(value: Fraction | int | str) -> Fraction:
    """Coerce to an exact rational degree in [0, 1].

    Floats are rejected: degrees must be exact.
    """
    if isinstance(value, float):
        raise TypeError("degrees must be exact rationals, not floats")
    if isinstance(value, bool):
        raise TypeError("degrees must be rationals, not booleans")
    try:
        degree = Fraction(value)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational degree: {value!r}") from exc
    if not ZERO <= degree <= ONE:
        raise ValueError(f"degree out of range [0, 1]: {degree}")
    return degree


def tuple_projection(vars: VarTuple, i: int) -> str:
    """The i-th component of a variable tuple, 1-based."""
    if not 1 <= i <= len(vars):
        raise IndexError(f"position {i} out of range for tuple of length {len(vars)}")
    return vars[i - 1]


def _check_var_tuple(vars: VarTuple, label: str) -> None:
    if not isinstance(vars, tuple) or len(vars) == 0:
        raise ValueError(f"{label} side must be a nonempty tuple of variables")
    for v in vars:
        if not isinstance(v, str) or not v:
            raise ValueError(f"{label} side holds a non-variable entry: {v!r}")


@dataclass(frozen=True)
class Atom:
    """Approximate exclusion atom ``left |_degree right``."""

    left: VarTuple
    right: VarTuple
    degree: Fraction = ZERO

    def __post_init__(self) -> None:
        _check_var_tuple(self.left, "left")
        _check_var_tuple(self.right, "right")
        if len(self.left) != len(self.right):
            raise ValueError(
                f"side arities differ: {len(self.left)} vs {len(self.right)}"
            )
        object.__setattr__(self, "degree", as_degree(self.degree))

    @property
    def arity(self) -> int:
        return len(self.left)

    def var_set(self) -> frozenset[str]:
        """All variables mentioned on either side."""
        return frozenset(self.left) | frozenset(self.right)

    def is_contradictory(self) -> bool:
        """True when only the empty team can satisfy the atom.

        That is the case exactly when both sides are the same tuple and the
        degree is below 1: any row then conflicts with itself.
        """
        return self.left == self.right and self.degree < ONE

    def with_degree(self, degree: Fraction | int | str) -> "Atom":
        return Atom(self.left, self.right, as_degree(degree))

    def __str__(self) -> str:
        bar = "|" if self.degree == ZERO else f"|[{self.degree}]|"
        return f"{' '.join(self.left)} {bar} {' '.join(self.right)}"

    def swapped(self) -> "Atom":
        """The atom with its sides exchanged, same degree."""
        return Atom(self.right, self.left, self.degree)


def _side(value: str | Iterable[str]) -> VarTuple:
    if isinstance(value, str):
        return tuple(value.split())
    return tuple(value)


def atom(
    left: str | Iterable[str],
    right: str | Iterable[str],
    degree: Fraction | int | str = ZERO,
) -> Atom:
    """Convenience constructor; strings split on whitespace into variables."""
    return Atom(_side(left), _side(right), as_degree(degree))


@dataclass(frozen=True)
class Team:
    """A finite set of assignments over an ordered schema of variables.

    ``rows`` are schema-aligned value tuples.  Duplicate rows collapse: a
    team is a set, so satisfaction can only consult which assignments are
    present, never how often.
    """

    schema: tuple[str, ...]
    rows: frozenset[Row] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if not isinstance(self.schema, tuple):
            raise ValueError("schema must be a tuple of variable names")
        for v in self.schema:
            if not isinstance(v, str) or not v:
                raise ValueError(f"schema holds a non-variable entry: {v!r}")
        if len(set(self.schema)) != len(self.schema):
            raise ValueError("schema variables must be distinct")
        object.__setattr__(self, "rows", frozenset(self.rows))
        width = len(self.schema)
        for row in self.rows:
            if not isinstance(row, tuple) or len(row) != width:
                raise ValueError(f"row {row!r} does not match schema width {width}")
            for cell in row:
                if not isinstance(cell, str):
                    raise ValueError(f"team values must be strings, got {cell!r}")

    @property
    def size(self) -> int:
        return len(self.rows)

    def is_empty(self) -> bool:
        return not self.rows

    def column(self, var: str) -> int:
        """Schema index of a variable."""
        try:
            return self.schema.index(var)
        except ValueError:
            from .errors import UnknownVariableError

            raise UnknownVariableError(f"variable {var!r} not in schema {self.schema}")

    def value_count(self) -> int:
        """Number of distinct values appearing in any cell."""
        return len({cell for row in self.rows for cell in row})

    def assignments(self) -> tuple[dict[str, str], ...]:
        """Rows as variable-to-value mappings, in sorted row order."""
        return tuple(dict(zip(self.schema, row)) for row in sorted(self.rows))

    def subteam(self, keep: Iterable[Row]) -> "Team":
        """The team restricted to the given rows (all must be present)."""
        kept = frozenset(keep)
        if not kept <= self.rows:
            raise ValueError("subteam rows must come from the team")
        return Team(self.schema, kept)


def team_from_rows(schema: Iterable[str], rows: Iterable[Iterable[str]]) -> Team:
    """Convenience constructor; deduplicates rows silently."""
    return Team(tuple(schema), frozenset(tuple(r) for r in rows))


def team_from_assignments(maps: Iterable[Mapping[str, str]], schema: Iterable[str] | None = None) -> Team:
    """Build a team from mappings.  Schema defaults to sorted key union."""
    maps = list(maps)
    if schema is None:
        names: set[str] = set()
        for m in maps:
            names.update(m)
        schema = tuple(sorted(names))
    else:
        schema = tuple(schema)
    rows = []
    for m in maps:
        if set(m) != set(schema):
            raise ValueError(f"assignment keys {sorted(m)} do not match schema {schema}")
        rows.append(tuple(m[v] for v in schema))
    return Team(schema, frozenset(rows))
