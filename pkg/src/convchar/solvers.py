"""Enumeration-driven partition solvers.

Each solver loops over the convex-character stream of one tree, filters or
scores each character against the whole input, and keeps an incumbent.  No
branch-and-bound: the point is that any problem which projects down onto
convex characters gets an exact solver for free, at O(alpha_k^n * poly(n))
worst case.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .characters import Character, enumerate_convex, is_convex, parsimony_score
from .trees import Tree, parse_newick

MODES = (
    "agreement_forest_min_components",
    "quartet_exact_partition",
    "objective_optimize",
)


def _sum_parsimony(f: Character, trees: Sequence[Tree]) -> int:
    return sum(parsimony_score(t, f) for t in trees)


OBJECTIVES: dict[str, Callable[[Character, Sequence[Tree]], int]] = {
    "sum_parsimony": _sum_parsimony,
}


@dataclass(frozen=True)
class SolveInstance:
    """A multi-tree partition problem; all trees share one taxon set."""

    trees: tuple[Tree, ...]
    k: int = 1
    mode: str = "agreement_forest_min_components"
    objective: str = "sum_parsimony"

    def __post_init__(self):
        if not self.trees:
            raise ValueError("instance needs at least one tree")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        taxa = self.trees[0].taxa
        if any(t.taxa != taxa for t in self.trees):
            raise ValueError("all trees must share the same taxon set")

    @classmethod
    def from_json_dict(cls, data: dict) -> "SolveInstance":
        try:
            newicks = data["trees"]
            mode = data["mode"]
        except KeyError as missing:
            raise ValueError(f"instance is missing {missing}") from None
        if not isinstance(newicks, list) or not all(isinstance(s, str) for s in newicks):
            raise ValueError("'trees' must be a list of Newick strings")
        return cls(
            trees=tuple(parse_newick(s) for s in newicks),
            k=int(data.get("k", 1)),
            mode=mode,
            objective=data.get("objective", "sum_parsimony"),
        )


@dataclass(frozen=True)
class SolveResult:
    character: Character | None
    objective_value: int | None
    characters_scanned: int
    wall_time: float = field(compare=False)

    def to_json_dict(self) -> dict:
        return {
            "character": self.character.text() if self.character else None,
            "objective_value": self.objective_value,
            "characters_scanned": str(self.characters_scanned),
            "wall_time_ms": round(self.wall_time * 1000.0, 3),
        }


def _require_same_taxa(trees: Sequence[Tree]) -> None:
    taxa = trees[0].taxa
    if any(t.taxa != taxa for t in trees[1:]):
        raise ValueError("taxon sets differ between input trees")


def agreement_forest_min_components(t1: Tree, t2: Tree, k: int = 1) -> SolveResult:
    """Agreement forest with fewest components where every component has at
    least k taxa, or none.

    Scans every level-k convex character of t1; a character qualifies when
    it is also convex on t2 and each block restricts to identical subtrees
    in both (canonical Newick equality).  The full stream is scanned, so
    characters_scanned equals the level-k count of t1.
    """
    _require_same_taxa([t1, t2])
    start = time.perf_counter()
    best: Character | None = None
    scanned = 0
    for f in enumerate_convex(t1, k):
        scanned += 1
        if best is not None and f.block_count >= best.block_count:
            continue
        if not is_convex(t2, f):
            continue
        if all(
            t1.restrict(b).canonical_newick() == t2.restrict(b).canonical_newick()
            for b in f.blocks
        ):
            best = f
    return SolveResult(
        character=best,
        objective_value=best.block_count if best else None,
        characters_scanned=scanned,
        wall_time=time.perf_counter() - start,
    )


def quartet_exact_partition(trees: Sequence[Tree]) -> SolveResult:
    """Perfect partition into size-4 blocks whose restrictions are disjoint
    in every tree and identical across trees, or none.

    Returns the first qualifying character in stream order, so the scan may
    stop early.
    """
    trees = tuple(trees)
    if not trees:
        raise ValueError("need at least one tree")
    _require_same_taxa(trees)
    start = time.perf_counter()
    n = trees[0].n
    scanned = 0
    if n % 4 == 0:
        for f in enumerate_convex(trees[0], 4):
            scanned += 1
            if any(len(b) != 4 for b in f.blocks):
                continue
            if any(not is_convex(t, f) for t in trees[1:]):
                continue
            if all(
                len({t.restrict(b).canonical_newick() for t in trees}) == 1
                for b in f.blocks
            ):
                return SolveResult(
                    character=f,
                    objective_value=f.block_count,
                    characters_scanned=scanned,
                    wall_time=time.perf_counter() - start,
                )
    return SolveResult(
        character=None,
        objective_value=None,
        characters_scanned=scanned,
        wall_time=time.perf_counter() - start,
    )


def optimize_objective(
    tree: Tree,
    trees: Sequence[Tree],
    k: int,
    objective: str = "sum_parsimony",
) -> SolveResult:
    """Character of ``tree`` minimizing the named objective over ``trees``;
    ties go to the first character in stream order.  Scans the full stream.
    """
    fn = OBJECTIVES.get(objective)
    if fn is None:
        raise ValueError(f"unknown objective {objective!r}")
    trees = tuple(trees)
    if not trees:
        raise ValueError("need at least one tree to score against")
    _require_same_taxa((tree, *trees))
    start = time.perf_counter()
    best: Character | None = None
    best_value: int | None = None
    scanned = 0
    for f in enumerate_convex(tree, k):
        scanned += 1
        value = fn(f, trees)
        if best_value is None or value < best_value:
            best, best_value = f, value
    return SolveResult(
        character=best,
        objective_value=best_value,
        characters_scanned=scanned,
        wall_time=time.perf_counter() - start,
    )


def solve(instance: SolveInstance) -> SolveResult:
    if instance.mode == "agreement_forest_min_components":
        if len(instance.trees) != 2:
            raise ValueError("agreement mode needs exactly two trees")
        return agreement_forest_min_components(*instance.trees, instance.k)
    if instance.mode == "quartet_exact_partition":
        return quartet_exact_partition(instance.trees)
    return optimize_objective(
        instance.trees[0], instance.trees, instance.k, instance.objective
    )
