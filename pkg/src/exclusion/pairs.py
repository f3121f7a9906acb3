"""Pair-set representation of exclusion atoms.

An atom's sides induce the set of component pairs
S(x | y) = { (x_i, y_i) : 1 <= i <= arity }.  Atoms with equal pair sets are
semantically equivalent, and the structural rules (append, delete duplicate
block, swap blocks) act on atoms exactly by growing or preserving this set.
The decision procedure therefore works on pair sets and on per-variable
correspondence sets rather than on raw tuples.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import Atom

Pair = tuple[str, str]
PairSet = frozenset[Pair]


def pair_set(atom: Atom) -> PairSet:
    """The set of aligned component pairs of the atom's sides."""
    return frozenset(zip(atom.left, atom.right))


def pair_list(atom: Atom) -> tuple[Pair, ...]:
    """Component pairs in position order, duplicates kept."""
    return tuple(zip(atom.left, atom.right))


@dataclass(frozen=True)
class CorrespondenceSets:
    """Partner sets of an atom's variables, keyed by variable name.

    left[a] holds every right-side partner of the left-side variable a; a
    variable occurring at several positions gets the union of its partners.
    right[b] is symmetric for right-side variables.
    """

    left: dict[str, frozenset[str]]
    right: dict[str, frozenset[str]]


def correspondence_sets(atom: Atom) -> CorrespondenceSets:
    left: dict[str, set[str]] = {}
    right: dict[str, set[str]] = {}
    for a, b in zip(atom.left, atom.right):
        left.setdefault(a, set()).add(b)
        right.setdefault(b, set()).add(a)
    return CorrespondenceSets(
        {v: frozenset(s) for v, s in left.items()},
        {v: frozenset(s) for v, s in right.items()},
    )


def end_constant_form(atom: Atom) -> Atom:
    """Equivalent atom with duplicate pairs removed and diagonal pairs last.

    Diagonal pairs (same variable on both sides at a position) move into a
    shared trailing suffix; the remaining pairs keep first-occurrence order.
    The pair set is unchanged, so the result is semantically equivalent.
    """
    seen: set[Pair] = set()
    plain: list[Pair] = []
    diagonal: list[Pair] = []
    for pair in zip(atom.left, atom.right):
        if pair in seen:
            continue
        seen.add(pair)
        if pair[0] == pair[1]:
            diagonal.append(pair)
        else:
            plain.append(pair)
    ordered = plain + diagonal
    return Atom(
        tuple(a for a, _ in ordered),
        tuple(b for _, b in ordered),
        atom.degree,
    )


def diagonal_free_arity(atom: Atom) -> int:
    """Number of distinct non-diagonal pairs, i.e. the end-constant prefix."""
    return len({p for p in zip(atom.left, atom.right) if p[0] != p[1]})


def subset_derivable(src: Atom, dst: Atom) -> bool:
    """Whether dst follows from src by the structural rules alone.

    Appending can only grow the pair set and the other structural rules
    preserve it, so this holds exactly when every pair of src already
    appears in dst.  Degrees are not consulted here.
    """
    return pair_set(src) <= pair_set(dst)


@dataclass(frozen=True)
class CoverWitness:
    """Evidence that one arity-switch (rule A6) bridges src to a goal.

    side is "left" or "right": which goal side supplied the correspondence
    sets.  anchor maps each non-diagonal pair of src to the smallest goal
    position (0-based) whose variable's partners contain both components.
    The anchored goal-side variables become the fresh tuple of the switch.
    """

    side: str
    anchor: tuple[tuple[Pair, int], ...]

    def anchor_map(self) -> dict[Pair, int]:
        return dict(self.anchor)


def a6_cover(src: Atom, goal: Atom) -> CoverWitness | None:
    """Test whether one application of the arity-switching rule suffices.

    src derives goal through a single switch (plus structural steps and at
    most one side swap) iff for some goal side d, every non-diagonal pair
    (a, b) of src fits inside the partner-set square of one position of d:
    a and b both partner the goal variable at that position.  Diagonal
    pairs ride along in the shared suffix and need no cover.

    Returns the first cover found, trying the left side then the right,
    anchoring each pair at its smallest covering position.
    """
    corr = correspondence_sets(goal)
    plain_pairs: list[Pair] = []
    seen: set[Pair] = set()
    for pair in zip(src.left, src.right):
        if pair[0] != pair[1] and pair not in seen:
            seen.add(pair)
            plain_pairs.append(pair)
    if not plain_pairs:
        # fully diagonal src is contradictory; the switch rule needs at
        # least one non-diagonal pair, so no single application exists
        return None
    for side, tup, partners in (
        ("left", goal.left, corr.left),
        ("right", goal.right, corr.right),
    ):
        anchor: list[tuple[Pair, int]] = []
        for a, b in plain_pairs:
            pos = next(
                (
                    i
                    for i, var in enumerate(tup)
                    if a in partners[var] and b in partners[var]
                ),
                None,
            )
            if pos is None:
                break
            anchor.append(((a, b), pos))
        else:
            return CoverWitness(side, tuple(anchor))
    return None
