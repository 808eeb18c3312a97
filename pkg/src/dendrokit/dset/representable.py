"""Representables Omega[T] and their subobjects: boundaries, horns, Segal cores, faces."""
from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence

from ..omega import OmegaMap, compose, face, faces, hom, horn_labels, identity
from ..tree import Tree, TreeError, Vertex, format_tree
from .base import DendMap, Dendrex, DendroidalSet

logger = logging.getLogger(__name__)


def map_dendrex(m: OmegaMap) -> Dendrex:
    return Dendrex("map", m)


class Representable(DendroidalSet):
    """Omega[T]: dendrices at S are the morphisms S -> T, acted on by precomposition."""

    def __init__(self, tree: Tree):
        super().__init__()
        self.tree = tree

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        return [map_dendrex(m) for m in hom(shape, self.tree)]

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        return map_dendrex(compose(d.payload, m))

    @property
    def arity_bound(self) -> int:
        return self.tree.max_arity

    @property
    def description(self) -> str:
        return f"repr({format_tree(self.tree)})"


class Subobject(DendroidalSet):
    """The sub-dendroidal set of ``ambient`` generated by finitely many dendrices.

    A dendrex y at S is a member when y = act(h, x) for some generator x at U
    and some h in hom(S, U). Membership is decided by enumerating these
    restrictions, and the first witness (generator index, h) is remembered.
    """

    def __init__(self, ambient: DendroidalSet, generators: Sequence[tuple[Tree, Dendrex]], name: str):
        super().__init__()
        self.ambient = ambient
        self.generators = list(generators)
        self.name = name
        self._witnesses: dict[tuple[Tree, Dendrex], tuple[int, OmegaMap]] = {}

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        found: dict[Dendrex, tuple[int, OmegaMap]] = {}
        for idx, (u, x) in enumerate(self.generators):
            for h in hom(shape, u):
                found.setdefault(self.ambient.act(h, x), (idx, h))
        with self._lock:
            for y, witness in found.items():
                self._witnesses[(shape, y)] = witness
        return [y for y in self.ambient.dendrices(shape) if y in found]

    def witness(self, shape: Tree, d: Dendrex) -> tuple[int, OmegaMap]:
        """A generator index and a map h with act(h, generator) = d."""
        if not self.contains(shape, d):
            raise KeyError(f"{d} is not in {self.description} at {format_tree(shape)}")
        return self._witnesses[(shape, d)]

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        return self.ambient.act(m, d)

    @property
    def arity_bound(self) -> int:
        # every corolla dendrex is a restriction of a generator, so its relation
        # follows from the vertex relations of the generator shapes
        return max((u.max_arity for u, _ in self.generators), default=0)

    @property
    def description(self) -> str:
        return self.name

    @property
    def inclusion(self) -> DendMap:
        return DendMap(self, self.ambient, lambda shape, x: x, name=f"incl({self.name})")


class HornSubobject(Subobject):
    """Lambda^a[T]: the union of every face of T except the one labelled ``label``."""

    def __init__(self, tree: Tree, label: str):
        if label not in horn_labels(tree):
            raise TreeError(
                f"{label!r} is not a horn label of {format_tree(tree)}; labels are {horn_labels(tree)}"
            )
        self.tree = tree
        self.label = label
        self.faces = [(name, m) for name, m in faces(tree) if name != label]
        super().__init__(
            Representable(tree),
            [(m.source, map_dendrex(m)) for _, m in self.faces],
            f"horn({format_tree(tree)}, {label})",
        )


def representable(t: Tree) -> Representable:
    return Representable(t)


def boundary(t: Tree) -> Subobject:
    """The union of all inner and outer faces of ``t``; empty for eta."""
    return Subobject(
        Representable(t),
        [(m.source, map_dendrex(m)) for _, m in faces(t)],
        f"boundary({format_tree(t)})",
    )


def horn(t: Tree, label: str) -> HornSubobject:
    return HornSubobject(t, label)


def segal_core(t: Tree) -> Subobject:
    """The union of the vertex corollas of ``t``; all of Omega[eta] when ``t`` is eta."""
    if not t.vertices:
        gens = [(t, map_dendrex(identity(t)))]
    else:
        gens = []
        for v in t.vertices:
            corolla = Tree.build(v.output, [Vertex(v.output, v.inputs)])
            inclusion = OmegaMap.of(corolla, t, {e: e for e in corolla.edges})
            gens.append((corolla, map_dendrex(inclusion)))
    return Subobject(Representable(t), gens, f"core({format_tree(t)})")


def face_subobject(t: Tree, label: str) -> Subobject:
    m = face(t, label)
    return Subobject(Representable(t), [(m.source, map_dendrex(m))], f"face({format_tree(t)}, {label})")


def colour_subobject(t: Tree, edge: str) -> Subobject:
    """The copy of eta inside Omega[t] picked out by one edge."""
    if edge not in t.edges:
        raise TreeError(f"{edge!r} is not an edge of {format_tree(t)}")
    point = Tree(edges=(edge,), root=edge, vertices=())
    m = OmegaMap.of(point, t, {edge: edge})
    return Subobject(Representable(t), [(point, map_dendrex(m))], f"edge({format_tree(t)}, {edge})")


def yoneda(f: OmegaMap, source: Optional[Representable] = None, target: Optional[Representable] = None) -> DendMap:
    """The map Omega[S] -> Omega[T] given by postcomposition with ``f``."""
    source = source or Representable(f.source)
    target = target or Representable(f.target)
    return DendMap(source, target, lambda shape, x: map_dendrex(compose(f, x.payload)), name=f"yoneda({f})")
