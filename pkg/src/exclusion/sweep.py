"""Exhaustive comparison of the decision procedure against team semantics.

The keystone space: all instances over variables a, b, c with tuple
lengths at most 2, at most two assumptions, and degrees in {0, 1/4, 1/3}.
That is 270 atoms, 36,586 assumption sets, 9,878,220 instances.  For each
one the decision verdict is compared against a brute-force search for a
separating team within the row and value bounds of its counterexample
plan, and the certificates are exercised.

Three layers make the volume tractable:

* Teams are enumerated once, canonically up to value renaming, and packed
  into per-atom satisfaction bitmasks.  Satisfaction only compares values
  for equality, so renaming representatives carry the whole space.
* Instances are grouped under variable renaming.  Decision, semantics,
  and plan bounds all commute with renaming, so one representative per
  class settles the class; a modular sample re-runs the decision directly
  on unreduced instances to cross-check the transfer.
* The per-instance search is a bitwise AND scan with early exit over
  64-team words, compiled when the extension is available.  Banks are
  sorted by row count because separating teams tend to be small.

Min-removal over a packed team is a table lookup: conflicts between rows
i and j form a 16-bit word (bit i*4+j), and the table holds the least
number of rows covering every conflict, which is exactly the removal
count the semantics module computes.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product
from typing import Callable

import numpy as np

from . import kernel
from .calculus import check_derivation, synthesize
from .counterexample import build_team, domain_size_bound, verify
from .counterexample import plan as counterexample_plan
from .decision import decide
from .model import Atom
from .oracle import DEFAULT_BUDGET, oracle_implies

KEYSTONE_VARS = ("a", "b", "c")
KEYSTONE_DEGREES = (Fraction(0), Fraction(1, 4), Fraction(1, 3))
KEYSTONE_MAX_ROWS = 4
KEYSTONE_MAX_VALUES = 12

_removal_table: np.ndarray | None = None


def removal_table() -> np.ndarray:
    """Least rows covering every conflict, for each 16-bit conflict word."""
    global _removal_table
    if _removal_table is None:
        words = np.arange(1 << 16, dtype=np.uint32)
        best = np.full(words.shape, 255, dtype=np.uint8)
        for chosen in range(1 << 4):
            killed = 0
            for i in range(4):
                if chosen >> i & 1:
                    for j in range(4):
                        killed |= 1 << (i * 4 + j)
                        killed |= 1 << (j * 4 + i)
            covered = (words & ~np.uint32(killed)) == 0
            size = bin(chosen).count("1")
            np.minimum(
                best,
                np.where(covered, size, 255).astype(np.uint8),
                out=best,
            )
        _removal_table = best
    return _removal_table


def pack_mask(flags: np.ndarray) -> np.ndarray:
    """Bools to uint64 words, one bit per team, zero-padded at the top."""
    count = flags.shape[0]
    words = (count + 63) // 64
    padded = np.zeros(words * 64, dtype=bool)
    padded[:count] = flags
    return np.packbits(padded, bitorder="little").view(np.uint64)


class TeamBank:
    """Canonical teams packed for mask scans, sorted by row count."""

    def __init__(
        self,
        n_vars: int,
        max_rows: int,
        max_values: int,
        cells: np.ndarray,
        n_rows: np.ndarray,
        n_values: np.ndarray,
    ):
        self.n_vars = n_vars
        self.max_rows = max_rows
        self.max_values = max_values
        self.cells = cells
        self.n_rows = n_rows
        self.n_values = n_values
        self._words: dict[tuple, np.ndarray] = {}
        self._sat: dict[tuple, np.ndarray] = {}
        self._rows_le: dict[int, np.ndarray] = {}
        self._values_le: dict[int, np.ndarray] = {}
        self._ones: np.ndarray | None = None

    @classmethod
    def build(
        cls, n_vars: int, max_rows: int, max_values: int, budget: int = DEFAULT_BUDGET
    ) -> "TeamBank":
        cells, n_rows, n_values = kernel.enumerate_packed(
            n_vars, max_rows, max_values, budget
        )
        order = np.argsort(n_rows, kind="stable")
        return cls(
            n_vars,
            max_rows,
            max_values,
            np.ascontiguousarray(cells[order]),
            np.ascontiguousarray(n_rows[order]),
            np.ascontiguousarray(n_values[order]),
        )

    @property
    def size(self) -> int:
        return self.cells.shape[0]

    def conflict_words(self, left_cols, right_cols) -> np.ndarray:
        key = (tuple(left_cols), tuple(right_cols))
        words = self._words.get(key)
        if words is None:
            words = kernel.conflict_words(
                self.cells, self.n_rows, self.n_vars, list(key[0]), list(key[1])
            )
            self._words[key] = words
        return words

    def satisfaction_mask(self, left_cols, right_cols, degree: Fraction) -> np.ndarray:
        key = (tuple(left_cols), tuple(right_cols), degree)
        mask = self._sat.get(key)
        if mask is None:
            removed = removal_table()[self.conflict_words(key[0], key[1])]
            fits = (
                removed.astype(np.int64) * degree.denominator
                <= degree.numerator * self.n_rows.astype(np.int64)
            )
            mask = self._sat[key] = pack_mask(fits)
        return mask

    def row_mask(self, max_rows: int) -> np.ndarray:
        k = min(max_rows, self.max_rows)
        mask = self._rows_le.get(k)
        if mask is None:
            mask = self._rows_le[k] = pack_mask(self.n_rows <= k)
        return mask

    def value_mask(self, max_values: int) -> np.ndarray:
        d = min(max_values, 255)
        mask = self._values_le.get(d)
        if mask is None:
            mask = self._values_le[d] = pack_mask(self.n_values <= d)
        return mask

    def all_mask(self) -> np.ndarray:
        if self._ones is None:
            words = (self.size + 63) // 64
            self._ones = np.full(words, 2**64 - 1, dtype=np.uint64)
        return self._ones


def keystone_atoms() -> list[Atom]:
    """The 270 atoms of the keystone space, in fixed order."""
    tuples = [(v,) for v in KEYSTONE_VARS]
    tuples += [tuple(t) for t in product(KEYSTONE_VARS, repeat=2)]
    atoms = []
    for x in tuples:
        for y in tuples:
            if len(x) == len(y):
                for degree in KEYSTONE_DEGREES:
                    atoms.append(Atom(x, y, degree))
    return atoms


def _atom_images(atoms: list[Atom]) -> np.ndarray:
    """Atom index under each variable permutation; identity row first.

    Shape (6, len(atoms) + 1): the last column is a sentinel index that
    every permutation fixes, standing for "no atom".
    """
    index = {(a.left, a.right, a.degree): i for i, a in enumerate(atoms)}
    perms = sorted(permutations(KEYSTONE_VARS))
    img = np.zeros((len(perms), len(atoms) + 1), dtype=np.int64)
    for p, perm in enumerate(perms):
        renaming = dict(zip(KEYSTONE_VARS, perm))
        for i, a in enumerate(atoms):
            left = tuple(renaming[v] for v in a.left)
            right = tuple(renaming[v] for v in a.right)
            img[p, i] = index[left, right, a.degree]
        img[p, len(atoms)] = len(atoms)
    return img


def _premise_sets(n_atoms: int) -> tuple[np.ndarray, np.ndarray]:
    """Assumption sets of size <= 2 as sorted index pairs, sentinel-padded."""
    first = [n_atoms]
    second = [n_atoms]
    for i in range(n_atoms):
        first.append(i)
        second.append(n_atoms)
    for i in range(n_atoms):
        for j in range(i + 1, n_atoms):
            first.append(i)
            second.append(j)
    return np.array(first, dtype=np.int64), np.array(second, dtype=np.int64)


@dataclass
class Tally:
    """Failure counter keeping a few concrete examples."""

    count: int = 0
    examples: list = field(default_factory=list)
    cap: int = 10

    def add(self, example) -> None:
        self.count += 1
        if len(self.examples) < self.cap:
            self.examples.append(example)

    def __bool__(self) -> bool:
        return self.count > 0


@dataclass
class KeystoneReport:
    """Outcome of the exhaustive keystone sweep."""

    instances: int
    classes: int
    true_classes: int
    false_classes: int
    disagreements: Tally
    derivation_failures: Tally
    counterexample_failures: Tally
    bound_violations: Tally
    sample_size: int
    sample_mismatches: Tally
    elapsed: float
    kernel_lane: str


def run_keystone(
    progress: Callable[[int, int], None] | None = None, sample_stride: int = 61
) -> KeystoneReport:
    """Sweep the whole keystone space; see the module docstring.

    Returns tallies only; asserting on them is the caller's business.
    """
    start = time.perf_counter()
    atoms = keystone_atoms()
    n_atoms = len(atoms)
    sentinel = n_atoms
    base = n_atoms + 2  # above any index or sentinel, keeps keys injective
    span = base * base

    bank = TeamBank.build(len(KEYSTONE_VARS), KEYSTONE_MAX_ROWS, KEYSTONE_MAX_VALUES)
    col = {v: i for i, v in enumerate(KEYSTONE_VARS)}
    masks = []
    for a in atoms:
        left_cols = [col[v] for v in a.left]
        right_cols = [col[v] for v in a.right]
        masks.append(bank.satisfaction_mask(left_cols, right_cols, a.degree))
    ones = bank.all_mask()

    img = _atom_images(atoms)
    first, second = _premise_sets(n_atoms)
    n_sets = first.shape[0]

    # per-permutation key component of the assumption set, order-normalized
    set_parts = np.empty((img.shape[0], n_sets), dtype=np.int64)
    for p in range(img.shape[0]):
        one = img[p][first]
        two = img[p][second]
        set_parts[p] = np.minimum(one, two) * base + np.maximum(one, two)

    verdict_map = np.zeros(n_atoms * span, dtype=np.uint8)

    disagreements = Tally()
    derivation_failures = Tally()
    counterexample_failures = Tally()
    bound_violations = Tally()
    sample_mismatches = Tally()
    classes = true_classes = false_classes = 0
    sample_size = 0

    def describe(s: int, g: int) -> tuple:
        sigma_idx = [int(i) for i in (first[s], second[s]) if i != sentinel]
        return tuple(str(atoms[i]) for i in sigma_idx), str(atoms[g])

    for g in range(n_atoms):
        goal = atoms[g]
        keys = img[:, g, None] * span + set_parts
        own = keys[0]
        min_keys = keys.min(axis=0)
        reps = np.nonzero(min_keys == own)[0]

        for s in reps:
            sigma_idx = [int(i) for i in (first[s], second[s]) if i != sentinel]
            sigma = tuple(atoms[i] for i in sigma_idx)
            verdict = decide(sigma, goal)
            classes += 1
            verdict_map[own[s]] = 1 if verdict.holds else 2

            plan = verdict.plan
            if plan is None:
                plan = counterexample_plan(sigma, goal)
            a_mask = masks[sigma_idx[0]] if len(sigma_idx) > 0 else ones
            b_mask = masks[sigma_idx[1]] if len(sigma_idx) > 1 else ones
            found = kernel.any_counterexample(
                a_mask,
                b_mask,
                masks[g],
                bank.row_mask(plan.k),
                bank.value_mask(domain_size_bound(plan)),
            )
            if verdict.holds == found:
                disagreements.add((*describe(s, g), verdict.holds, found))

            if verdict.holds:
                true_classes += 1
                try:
                    derivation = synthesize(sigma, goal, verdict.witness)
                    result = check_derivation(derivation)
                    if not result.ok or derivation.goal != goal:
                        derivation_failures.add((*describe(s, g), result.reason))
                except Exception as exc:
                    derivation_failures.add((*describe(s, g), repr(exc)))
            else:
                false_classes += 1
                try:
                    team = build_team(plan)
                    if not verify(team, sigma, goal):
                        counterexample_failures.add((*describe(s, g), "verify"))
                    if team.value_count() > domain_size_bound(plan):
                        bound_violations.add(
                            (*describe(s, g), team.value_count())
                        )
                except Exception as exc:
                    counterexample_failures.add((*describe(s, g), repr(exc)))

        # modular sample: re-run the decision on unreduced instances and
        # compare with the verdict recorded for their class
        start_offset = (-g * n_sets) % sample_stride
        for s in range(start_offset, n_sets, sample_stride):
            sample_size += 1
            sigma_idx = [int(i) for i in (first[s], second[s]) if i != sentinel]
            sigma = tuple(atoms[i] for i in sigma_idx)
            verdict = decide(sigma, goal)
            stored = verdict_map[min_keys[s]]
            if stored == 0 or (stored == 1) != verdict.holds:
                sample_mismatches.add((*describe(s, g), int(stored), verdict.holds))

        if progress is not None:
            progress(g + 1, n_atoms)

    return KeystoneReport(
        instances=n_atoms * n_sets,
        classes=classes,
        true_classes=true_classes,
        false_classes=false_classes,
        disagreements=disagreements,
        derivation_failures=derivation_failures,
        counterexample_failures=counterexample_failures,
        bound_violations=bound_violations,
        sample_size=sample_size,
        sample_mismatches=sample_mismatches,
        elapsed=time.perf_counter() - start,
        kernel_lane=kernel.IMPLEMENTATION,
    )


def oracle_spot_check(
    seed: int = 22, counts: dict[int, int] | None = None, max_draws: int = 200_000
) -> tuple[int, Tally]:
    """Replay sampled keystone instances through the literal bounded oracle.

    Draws instances at random, stratified by planned team size k (larger k
    means an exponentially larger search space, so fewer draws; k = 4 runs
    are kept to instances over at most two variables).  Returns the number
    of comparisons made and mismatches between the decision and
    oracle_implies at the plan's bounds.
    """
    if counts is None:
        counts = {1: 30, 2: 170, 3: 20, 4: 2}
    remaining = dict(counts)
    atoms = keystone_atoms()
    rng = random.Random(seed)
    mismatches = Tally()
    compared = 0
    for _ in range(max_draws):
        if not any(remaining.values()):
            break
        size = rng.choice((0, 1, 1, 2, 2, 2))
        sigma = tuple(atoms[rng.randrange(len(atoms))] for _ in range(size))
        if size == 2 and sigma[0] == sigma[1]:
            continue
        goal = atoms[rng.randrange(len(atoms))]
        plan = counterexample_plan(sigma, goal)
        k = plan.k
        if remaining.get(k, 0) <= 0:
            continue
        if k >= 4 and len(plan.schema) > 2:
            continue
        remaining[k] -= 1
        compared += 1
        result = oracle_implies(
            sigma, goal, max_rows=k, max_values=domain_size_bound(plan)
        )
        verdict = decide(sigma, goal)
        if result.implied != verdict.holds:
            mismatches.add(
                (
                    tuple(str(a) for a in sigma),
                    str(goal),
                    verdict.holds,
                    result.implied,
                )
            )
    return compared, mismatches
