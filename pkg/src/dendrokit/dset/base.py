"""Abstract base class for finitely enumerable dendroidal sets."""
from __future__ import annotations

import logging
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Optional

from ..omega import OmegaMap, generating_maps
from ..tree import Tree, enumerate_trees, format_tree

logger = logging.getLogger(__name__)


class NaturalityError(ValueError):
    """Raised when a map of dendroidal sets fails to commute with the Omega action."""


@dataclass(frozen=True)
class Dendrex:
    """A T-shaped element of a dendroidal set.

    ``tag`` records which constructor produced it (``map``, ``nerve``,
    ``simplex``, ``point``, ``sum``, ``cell``, ``base``); ``payload`` is the
    underlying Omega map, table entry or wrapped dendrex.
    """

    tag: str
    payload: Hashable

    def __str__(self) -> str:
        return f"{self.tag}:{self.payload}"


class DendroidalSet(ABC):
    """A presheaf on Omega exposed through dendrex enumeration and the contravariant action."""

    #: nesting depth of cell attachments and quotients, keeps fresh tokens distinct
    depth: int = 0

    def __init__(self) -> None:
        self._cache: dict[Tree, tuple[Dendrex, ...]] = {}
        self._members: dict[Tree, frozenset[Dendrex]] = {}
        self._lock = threading.Lock()

    def dendrices(self, shape: Tree) -> tuple[Dendrex, ...]:
        """The finite set D_shape in a deterministic order."""
        with self._lock:
            cached = self._cache.get(shape)
        if cached is None:
            cached = tuple(self._enumerate(shape))
            with self._lock:
                cached = self._cache.setdefault(shape, cached)
            logger.debug("%s at %s: %d dendrices", self.description, format_tree(shape), len(cached))
        return cached

    def contains(self, shape: Tree, d: Dendrex) -> bool:
        with self._lock:
            members = self._members.get(shape)
        if members is None:
            members = frozenset(self.dendrices(shape))
            with self._lock:
                self._members[shape] = members
        return d in members

    @abstractmethod
    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        """Produce D_shape; called once per shape, results are cached."""

    @abstractmethod
    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        """Restrict ``d`` (a dendrex at ``m.target``) along ``m`` to a dendrex at ``m.source``."""

    @property
    @abstractmethod
    def arity_bound(self) -> int:
        """Largest corolla arity whose relations are needed to present K0."""

    @property
    def description(self) -> str:
        return type(self).__name__

    def __repr__(self) -> str:
        return f"<{self.description}>"


@dataclass(frozen=True, eq=False)
class DendMap:
    """A map of dendroidal sets given by its components at every shape."""

    source: DendroidalSet
    target: DendroidalSet
    component: Callable[[Tree, Dendrex], Dendrex]
    name: str = ""

    def __call__(self, shape: Tree, d: Dendrex) -> Dendrex:
        return self.component(shape, d)


def identity_map(d: DendroidalSet) -> DendMap:
    return DendMap(d, d, lambda shape, x: x, name=f"id({d.description})")


def compose_maps(g: DendMap, f: DendMap) -> DendMap:
    """g after f."""
    if f.target is not g.source:
        raise NaturalityError(f"cannot compose {g.name or g} after {f.name or f}: sets differ")
    return DendMap(f.source, g.target, lambda shape, x: g(shape, f(shape, x)), name=f"{g.name}.{f.name}")


def window(max_vertices: int, max_arity: int, max_edges: Optional[int] = None) -> list[Tree]:
    """The bounded shape corpus used for naturality checks."""
    return enumerate_trees(max_vertices, max_arity, max_edges)


def check_naturality(f: DendMap, shapes: Iterable[Tree]) -> Optional[str]:
    """None when ``f`` commutes with faces, degeneracies and automorphisms into ``shapes``."""
    for shape in shapes:
        for d in f.source.dendrices(shape):
            image = f(shape, d)
            if not f.target.contains(shape, image):
                return f"{f.name}: image of {d} at {format_tree(shape)} is not a dendrex of the target"
            for m in generating_maps(shape):
                lhs = f.target.act(m, image)
                rhs = f(m.source, f.source.act(m, d))
                if lhs != rhs:
                    return (
                        f"{f.name}: not natural along {m} for {d}: "
                        f"restrict-then-map gives {rhs}, map-then-restrict gives {lhs}"
                    )
    return None


def check_presheaf(d: DendroidalSet, shapes: Iterable[Tree]) -> Optional[str]:
    """None when act(id) = id and act is contravariantly functorial on hom-sets between ``shapes``."""
    from ..omega import compose, hom, identity

    shapes = list(shapes)
    for t in shapes:
        ident = identity(t)
        for x in d.dendrices(t):
            if d.act(ident, x) != x:
                return f"act(id) moved {x} at {format_tree(t)}"
    for t in shapes:
        for s in shapes:
            for g in hom(s, t):
                for r in shapes:
                    for f in hom(r, s):
                        gf = compose(g, f)
                        for x in d.dendrices(t):
                            if d.act(f, d.act(g, x)) != d.act(gf, x):
                                return f"act not functorial for {f} then {g} on {x}"
    return None
