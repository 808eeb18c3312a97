"""Morphisms of Omega as validated edge maps.

A morphism S -> T is a map of the free operads Omega(S) -> Omega(T). Since
Omega(S) is free on the vertices of S, it is determined by where it sends the
edges: each vertex has to land on an operation of Omega(T), i.e. on a subtree
spanned by the images of its inputs below the image of its output.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Mapping, Optional

from .tree import (
    Tree,
    TreeError,
    Vertex,
    cuts,
    eta,
    format_tree,
    spanned_subtree,
)

logger = logging.getLogger(__name__)

OUTER_PREFIX = "@"


class MapError(ValueError):
    """Raised for invalid Omega maps and composition of non-matching shapes."""


@dataclass(frozen=True)
class OmegaMap:
    source: Tree
    target: Tree
    pairs: tuple[tuple[str, str], ...]

    @classmethod
    def of(cls, source: Tree, target: Tree, edge_map: Mapping[str, str]) -> "OmegaMap":
        return cls(source, target, tuple(sorted(edge_map.items())))

    @cached_property
    def edge_map(self) -> dict[str, str]:
        return dict(self.pairs)

    def __call__(self, edge: str) -> str:
        return self.edge_map[edge]

    @property
    def images(self) -> tuple[str, ...]:
        """Images of the source edges in sorted source-edge order."""
        return tuple(img for _, img in self.pairs)

    def __str__(self) -> str:
        return format_map(self)


def format_map(m: OmegaMap) -> str:
    body = ", ".join(f"{e}->{img}" for e, img in m.pairs)
    return f"{{{body}}} : {format_tree(m.source)} => {format_tree(m.target)}"


def _vertex_ok(target: Tree, v: Vertex, edge_map: Mapping[str, str]) -> Optional[str]:
    images = [edge_map[i] for i in v.inputs]
    if len(set(images)) != len(images):
        return f"inputs of the vertex at {v.output!r} have repeated images {images}"
    if spanned_subtree(target, edge_map[v.output], images) is None:
        return (
            f"vertex at {v.output!r} does not land on an operation: no subtree of "
            f"{format_tree(target)} with root {edge_map[v.output]!r} and leaves {sorted(images)}"
        )
    return None


def validate_map(m: OmegaMap) -> Optional[str]:
    """None when ``m`` is a morphism of Omega, else the first violation."""
    edge_map = m.edge_map
    missing = set(m.source.edges) - set(edge_map)
    if missing:
        return f"edge map is not total: {sorted(missing)} unmapped"
    extra = set(edge_map) - set(m.source.edges)
    if extra:
        return f"edge map mentions edges {sorted(extra)} that are not in the source"
    target_edges = set(m.target.edges)
    stray = [img for img in edge_map.values() if img not in target_edges]
    if stray:
        return f"edge map hits unknown target edges {sorted(set(stray))}"
    for v in m.source.vertices:
        problem = _vertex_ok(m.target, v, edge_map)
        if problem is not None:
            return problem
    return None


def identity(t: Tree) -> OmegaMap:
    return OmegaMap.of(t, t, {e: e for e in t.edges})


def compose(g: OmegaMap, f: OmegaMap) -> OmegaMap:
    """g after f."""
    if f.target != g.source:
        raise MapError(
            f"cannot compose: target {format_tree(f.target)} != source {format_tree(g.source)}"
        )
    return OmegaMap.of(f.source, g.target, {e: g(img) for e, img in f.pairs})


def is_injective(m: OmegaMap) -> bool:
    return len(set(m.images)) == len(m.images)


def inner_face(t: Tree, edge: str) -> OmegaMap:
    """The face of ``t`` contracting the inner edge ``edge``."""
    if edge not in t.inner_edges:
        raise TreeError(f"{edge!r} is not an inner edge of {format_tree(t)}")
    upper = t.above[edge]
    lower = t.below[edge]
    merged_inputs: list[str] = []
    for i in lower.inputs:
        merged_inputs.extend(upper.inputs if i == edge else (i,))
    vertices = [v for v in t.vertices if v.output not in (edge, lower.output)]
    vertices.append(Vertex(lower.output, tuple(merged_inputs)))
    source = Tree.build(t.root, vertices, [e for e in t.edges if e != edge])
    return OmegaMap.of(source, t, {e: e for e in source.edges})


def _outer_eligible(t: Tree, v: Vertex) -> bool:
    if all(i in t.leaves for i in v.inputs):
        return True
    if v.output == t.root:
        return sum(1 for i in v.inputs if i not in t.leaves) == 1
    return False


def _chop(t: Tree, v: Vertex) -> Tree:
    if all(i in t.leaves for i in v.inputs):
        removed = set(v.inputs)
        return Tree.build(
            t.root,
            [u for u in t.vertices if u.output != v.output],
            [e for e in t.edges if e not in removed],
        )
    (new_root,) = [i for i in v.inputs if i not in t.leaves]
    kept = set(t.upper_edges(new_root))
    return Tree.build(new_root, [u for u in t.vertices if u.output in kept], kept)


def outer_faces(t: Tree) -> list[tuple[str, OmegaMap]]:
    """Outer faces: colour inclusions for a corolla, chopped outer vertices otherwise.

    A vertex is outer when all its inputs are leaves, or when it is the root
    vertex and all but exactly one of its inputs are leaves. Labels are the
    colour name (corollas) or ``@`` followed by the output edge of the vertex.
    """
    if len(t.vertices) == 1:
        faces = []
        for colour in t.edges:
            point = eta(colour)
            faces.append((colour, OmegaMap.of(point, t, {colour: colour})))
        return faces
    faces = []
    for v in t.vertices:
        if _outer_eligible(t, v):
            source = _chop(t, v)
            faces.append((OUTER_PREFIX + v.output, OmegaMap.of(source, t, {e: e for e in source.edges})))
    return faces


def faces(t: Tree) -> list[tuple[str, OmegaMap]]:
    inner = [(e, inner_face(t, e)) for e in sorted(t.inner_edges)]
    return inner + outer_faces(t)


def horn_labels(t: Tree) -> list[str]:
    return [label for label, _ in faces(t)]


def face(t: Tree, label: str) -> OmegaMap:
    for name, m in faces(t):
        if name == label:
            return m
    raise TreeError(f"{label!r} is not a face label of {format_tree(t)}; labels are {horn_labels(t)}")


@lru_cache(maxsize=None)
def _hom(s: Tree, t: Tree) -> tuple[OmegaMap, ...]:
    order = [s.root]
    for e in order:
        v = s.above.get(e)
        if v is not None:
            order.extend(v.inputs)
    found: list[OmegaMap] = []
    assignment: dict[str, str] = {}
    pending = [s.above[e] for e in order if e in s.above]

    def extend(idx: int) -> None:
        if idx == len(pending):
            found.append(OmegaMap.of(s, t, assignment))
            return
        v = pending[idx]
        base = assignment[v.output]
        for leaf_set in cuts(t, base):
            if len(leaf_set) != v.arity:
                continue
            for perm in itertools.permutations(sorted(leaf_set)):
                for i, img in zip(v.inputs, perm):
                    assignment[i] = img
                extend(idx + 1)
            for i in v.inputs:
                assignment.pop(i, None)

    for r in t.edges:
        assignment = {s.root: r}
        extend(0)
    found.sort(key=lambda m: m.images)
    logger.debug("hom(%s, %s): %d maps", format_tree(s), format_tree(t), len(found))
    return tuple(found)


def hom(s: Tree, t: Tree) -> list[OmegaMap]:
    """All morphisms s -> t, ordered lexicographically by images of the sorted source edges."""
    return list(_hom(s, t))


def degeneracies_into(t: Tree) -> list[OmegaMap]:
    """For each edge e of ``t``: the tree with a unary vertex inserted at e, collapsed back onto t."""
    maps = []
    for e in t.edges:
        fresh = e + "_"
        while fresh in t.edges:
            fresh += "_"
        vertices = []
        for v in t.vertices:
            out = fresh if v.output == e else v.output
            vertices.append(Vertex(out, v.inputs))
        vertices.append(Vertex(e, (fresh,)))
        source = Tree.build(t.root, vertices, [*t.edges, fresh])
        edge_map = {x: x for x in t.edges}
        edge_map[fresh] = e
        maps.append(OmegaMap.of(source, t, edge_map))
    return maps


def automorphisms(t: Tree) -> list[OmegaMap]:
    return [m for m in hom(t, t) if is_injective(m)]


def generating_maps(t: Tree) -> list[OmegaMap]:
    """Faces, elementary degeneracies and automorphisms with target ``t``.

    Every morphism of Omega is a composite of these, so naturality checked
    on them holds for all maps into shapes of the same window.
    """
    return [m for _, m in faces(t)] + degeneracies_into(t) + automorphisms(t)
