"""Pushouts: attaching a tree along a horn, and collapsing a subobject to a point."""
from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

from ..omega import OmegaMap, compose, generating_maps, hom
from ..tree import Tree, format_tree
from .base import DendMap, Dendrex, DendroidalSet, NaturalityError, check_naturality, window
from .representable import HornSubobject, map_dendrex

logger = logging.getLogger(__name__)


def attaching_window(t: Tree) -> list[Tree]:
    """Shapes on which an attaching map along a horn of ``t`` is checked."""
    return window(len(t.vertices), t.max_arity, len(t.edges))


class AttachedCell(DendroidalSet):
    """The pushout of Omega[T] <- Lambda^a[T] -> D.

    Old dendrices keep their tokens. New dendrices at S are the maps
    S -> T outside the horn, tagged with the nesting depth so that repeated
    attachments never collide.
    """

    def __init__(self, base: DendroidalSet, attaching: DendMap):
        super().__init__()
        horn = attaching.source
        if not isinstance(horn, HornSubobject):
            raise NaturalityError(f"{attaching.name or 'attaching map'} does not start at a horn")
        if attaching.target is not base:
            raise NaturalityError(f"{attaching.name or 'attaching map'} does not land in {base.description}")
        problem = check_naturality(attaching, attaching_window(horn.tree))
        if problem is not None:
            raise NaturalityError(problem)
        self.base = base
        self.horn = horn
        self.tree = horn.tree
        self.attaching = attaching
        self.depth = base.depth + 1

    def _cell(self, f: OmegaMap) -> Dendrex:
        return Dendrex("cell", (self.depth, f))

    def _is_cell(self, x: Dendrex) -> bool:
        return x.tag == "cell" and x.payload[0] == self.depth

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        fresh = [self._cell(f) for f in hom(shape, self.tree) if not self.horn.contains(shape, map_dendrex(f))]
        return [*self.base.dendrices(shape), *fresh]

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        if not self._is_cell(d):
            return self.base.act(m, d)
        return self._glue(m.source, compose(d.payload[1], m))

    def _glue(self, shape: Tree, f: OmegaMap) -> Dendrex:
        y = map_dendrex(f)
        if self.horn.contains(shape, y):
            return self.attaching(shape, y)
        return self._cell(f)

    @property
    def arity_bound(self) -> int:
        return max(self.base.arity_bound, self.tree.max_arity)

    @property
    def description(self) -> str:
        return f"attach({self.base.description}, {format_tree(self.tree)}, {self.horn.label})"

    @property
    def inclusion(self) -> DendMap:
        return DendMap(self.base, self, lambda shape, x: x, name=f"incl({self.base.description})")

    @property
    def cell_map(self) -> DendMap:
        """The characteristic map Omega[T] -> pushout."""
        return DendMap(self.horn.ambient, self, lambda shape, x: self._glue(shape, x.payload), name="cell")


def attach_cell(d: DendroidalSet, t: Tree, label: str, attaching: DendMap) -> AttachedCell:
    horn = attaching.source
    if not isinstance(horn, HornSubobject) or horn.tree != t or horn.label != label:
        raise NaturalityError(f"attaching map is not defined on horn({format_tree(t)}, {label})")
    cell = AttachedCell(d, attaching)
    logger.debug("attached %s along %s", format_tree(t), label)
    return cell


class AttachedCells(DendroidalSet):
    """Several cells attached at once along horns of one base (a single pushout of a coproduct of horns)."""

    def __init__(self, base: DendroidalSet, attachings: Sequence[DendMap]):
        super().__init__()
        self.base = base
        self.depth = base.depth + 1
        self.cells = []
        for attaching in attachings:
            horn = attaching.source
            if not isinstance(horn, HornSubobject) or attaching.target is not base:
                raise NaturalityError(f"{attaching.name} is not a horn map into {base.description}")
            problem = check_naturality(attaching, attaching_window(horn.tree))
            if problem is not None:
                raise NaturalityError(problem)
            self.cells.append((horn, attaching))

    def _cell(self, i: int, f: OmegaMap) -> Dendrex:
        return Dendrex("cell", (self.depth, (i, f)))

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        out = list(self.base.dendrices(shape))
        for i, (horn, _) in enumerate(self.cells):
            for f in hom(shape, horn.tree):
                if not horn.contains(shape, map_dendrex(f)):
                    out.append(self._cell(i, f))
        return out

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        if not (d.tag == "cell" and d.payload[0] == self.depth):
            return self.base.act(m, d)
        i, f = d.payload[1]
        return self._glue(i, m.source, compose(f, m))

    def _glue(self, i: int, shape: Tree, f: OmegaMap) -> Dendrex:
        horn, attaching = self.cells[i]
        y = map_dendrex(f)
        if horn.contains(shape, y):
            return attaching(shape, y)
        return self._cell(i, f)

    @property
    def arity_bound(self) -> int:
        return max([self.base.arity_bound, *(horn.tree.max_arity for horn, _ in self.cells)])

    @property
    def description(self) -> str:
        return f"attach({self.base.description}, {len(self.cells)} cells)"

    @property
    def inclusion(self) -> DendMap:
        return DendMap(self.base, self, lambda shape, x: x, name=f"incl({self.base.description})")


BASEPOINT = "base"


def closure_window(base: DendroidalSet, sub: DendroidalSet) -> list[Tree]:
    """Shapes checked when collapsing ``sub``: the configured vertex bound, widened to reach every generator."""
    from ..config import EngineConfig

    vertices = EngineConfig.load().max_vertices
    arity = max(1, base.arity_bound, sub.arity_bound)
    for shape, _ in getattr(sub, "generators", ()):
        vertices = max(vertices, len(shape.vertices))
        arity = max(arity, shape.max_arity)
    return window(vertices, arity)


class Quotient(DendroidalSet):
    """D/D0: the pushout of D <- D0 -> *, with a basepoint at every shape."""

    def __init__(self, base: DendroidalSet, sub: DendroidalSet, shapes: Optional[Sequence[Tree]] = None):
        super().__init__()
        shapes = list(shapes) if shapes is not None else closure_window(base, sub)
        problem = check_closed(base, sub, shapes)
        if problem is not None:
            raise NaturalityError(problem)
        self.base = base
        self.sub = sub
        self.depth = base.depth + 1
        self.point = Dendrex(BASEPOINT, self.depth)

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        return [self.point, *(x for x in self.base.dendrices(shape) if not self.sub.contains(shape, x))]

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        if d == self.point:
            return self.point
        return self._collapse(m.source, self.base.act(m, d))

    def _collapse(self, shape: Tree, x: Dendrex) -> Dendrex:
        return self.point if self.sub.contains(shape, x) else x

    @property
    def arity_bound(self) -> int:
        return self.base.arity_bound

    @property
    def description(self) -> str:
        return f"quotient({self.base.description}, {self.sub.description})"

    @property
    def projection(self) -> DendMap:
        return DendMap(self.base, self, self._collapse, name="projection")


def check_closed(base: DendroidalSet, sub: DendroidalSet, shapes: Iterable[Tree]) -> Optional[str]:
    """None when ``sub`` is shape-wise contained in ``base`` and closed under its action."""
    for shape in shapes:
        for x in sub.dendrices(shape):
            if not base.contains(shape, x):
                return f"{x} at {format_tree(shape)} is not a dendrex of {base.description}"
            for m in generating_maps(shape):
                y = base.act(m, x)
                if not sub.contains(m.source, y):
                    return f"{sub.description} is not closed under {m}: {x} restricts to {y}"
    return None


def quotient(d: DendroidalSet, sub: DendroidalSet) -> Quotient:
    return Quotient(d, sub)
