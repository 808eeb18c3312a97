"""The empty and terminal dendroidal sets and finite coproducts."""
from __future__ import annotations

from typing import Iterable, Sequence

from ..omega import OmegaMap
from ..tree import Tree
from .base import DendMap, Dendrex, DendroidalSet

POINT = Dendrex("point", None)


class Empty(DendroidalSet):
    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        return ()

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        raise KeyError("the empty dendroidal set has no dendrices")

    @property
    def arity_bound(self) -> int:
        return 0

    @property
    def description(self) -> str:
        return "empty"


class Terminal(DendroidalSet):
    """Exactly one dendrex at every shape."""

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        return (POINT,)

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        return POINT

    @property
    def arity_bound(self) -> int:
        # the point is the nerve of the trivial groupoid
        return 2

    @property
    def description(self) -> str:
        return "terminal"


class DisjointUnion(DendroidalSet):
    """Shape-wise disjoint union; dendrices are tagged with the summand index."""

    def __init__(self, summands: Sequence[DendroidalSet]):
        super().__init__()
        self.summands = list(summands)

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        return [
            Dendrex("sum", (i, x))
            for i, part in enumerate(self.summands)
            for x in part.dendrices(shape)
        ]

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        i, x = d.payload
        return Dendrex("sum", (i, self.summands[i].act(m, x)))

    @property
    def arity_bound(self) -> int:
        return max((part.arity_bound for part in self.summands), default=0)

    @property
    def description(self) -> str:
        return "union(" + ", ".join(part.description for part in self.summands) + ")"

    def injection(self, i: int) -> DendMap:
        return DendMap(
            self.summands[i], self, lambda shape, x: Dendrex("sum", (i, x)), name=f"inj{i}"
        )

    @property
    def injections(self) -> list[DendMap]:
        return [self.injection(i) for i in range(len(self.summands))]


def empty() -> Empty:
    return Empty()


def terminal() -> Terminal:
    return Terminal()


def disjoint_union(summands: Sequence[DendroidalSet]) -> DisjointUnion:
    return DisjointUnion(summands)
