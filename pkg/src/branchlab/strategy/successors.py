"""Caring weights from counting successors by their remembered history.

Each experiment splits concern equally among its outcomes, so a successor
that remembers a chain of experiments receives the product of
``1/children`` along its path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

__all__ = ["HistoryTree", "successor_caring_weights", "tree_from_nested", "leaf_weights"]


@dataclass(frozen=True)
class HistoryTree:
    """A node of the history tree; leaves have no children.

    Internal nodes are experiments and need at least two outcomes.
    """

    children: tuple["HistoryTree", ...] = ()
    label: str | None = None

    def __post_init__(self):
        if len(self.children) == 1:
            raise ValueError("an experiment needs at least two outcomes")

    @property
    def is_leaf(self) -> bool:
        return not self.children


def tree_from_nested(spec) -> HistoryTree:
    """Build a tree from nested lists; any non-list value is a leaf label.

    ``[None, [None, None], None]`` is a three-outcome experiment whose
    second outcome is followed by a two-outcome experiment.
    """
    if isinstance(spec, (list, tuple)):
        return HistoryTree(tuple(tree_from_nested(c) for c in spec))
    return HistoryTree(label=None if spec is None else str(spec))


def successor_caring_weights(tree: HistoryTree, scheme: str = "memory_branch_counting") -> dict[tuple[int, ...], Fraction]:
    """Map each leaf, addressed by its child-index path, to its caring weight."""
    if scheme != "memory_branch_counting":
        raise ValueError(f"unknown counting scheme {scheme!r}")
    weights: dict[tuple[int, ...], Fraction] = {}

    def walk(node: HistoryTree, path: tuple[int, ...], weight: Fraction):
        if node.is_leaf:
            weights[path] = weight
            return
        share = weight / len(node.children)
        for i, child in enumerate(node.children):
            walk(child, path + (i,), share)

    walk(tree, (), Fraction(1))
    return weights


def leaf_weights(tree: HistoryTree) -> Sequence[Fraction]:
    """Caring weights in depth-first leaf order."""
    return list(successor_caring_weights(tree).values())
