"""Finite simplicial sets of dimension <= 2 and their extension by zero to dendroidal sets.

Only nondegenerate simplices are stored. A simplex of the realised simplicial
set is a pair (nondegenerate simplex, nondecreasing surjection sigma), i.e.
the Eilenberg-Zilber normal form; degeneracies in every dimension come for
free from sigma.
"""
from __future__ import annotations

import itertools
import logging
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, Mapping, Optional, Sequence

from ..omega import OmegaMap
from ..tree import Tree, format_tree, linear_chain
from .base import Dendrex, DendroidalSet

if TYPE_CHECKING:
    from ..models import SimplicialListing

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SimplicialSetFin:
    """Nondegenerate simplices in dimensions 0..2 with their faces.

    ``edges`` maps a name to (source, target). ``triangles`` maps a name to
    (d0, d1, d2); each face entry names an edge or, for a degenerate face, a
    vertex.
    """

    vertices: tuple[str, ...]
    edges: Mapping[str, tuple[str, str]] = field(default_factory=dict)
    triangles: Mapping[str, tuple[str, str, str]] = field(default_factory=dict)

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(sorted(self.edges.items())), tuple(sorted(self.triangles.items()))))

    @cached_property
    def dimension_of(self) -> dict[str, int]:
        dims = {v: 0 for v in self.vertices}
        dims.update({e: 1 for e in self.edges})
        dims.update({x: 2 for x in self.triangles})
        return dims

    def nondegenerate(self, dim: int) -> list[str]:
        if dim == 0:
            return list(self.vertices)
        if dim == 1:
            return sorted(self.edges)
        if dim == 2:
            return sorted(self.triangles)
        return []

    def endpoints(self, name: str) -> tuple[str, str]:
        """Source and target of an edge entry, reading a vertex as its degenerate edge."""
        if name in self.edges:
            return self.edges[name]
        return (name, name)

    def validate(self) -> Optional[str]:
        """None when names are unique and all face identities hold, else the first violation."""
        names = [*self.vertices, *self.edges, *self.triangles]
        if len(set(names)) != len(names):
            dupes = sorted({n for n in names if names.count(n) > 1})
            return f"simplex names are not unique: {dupes}"
        verts = set(self.vertices)
        for e, (s, t) in sorted(self.edges.items()):
            if s not in verts or t not in verts:
                return f"edge {e!r} has an endpoint that is not a vertex"
        for x, entries in sorted(self.triangles.items()):
            for entry in entries:
                if entry not in verts and entry not in self.edges:
                    return f"triangle {x!r} has face {entry!r} that is neither an edge nor a vertex"
            d0, d1, d2 = (self.endpoints(entry) for entry in entries)
            if d2[0] != d1[0]:
                return f"triangle {x!r}: vertex 0 differs between faces d1 and d2"
            if d2[1] != d0[0]:
                return f"triangle {x!r}: vertex 1 differs between faces d0 and d2"
            if d1[1] != d0[1]:
                return f"triangle {x!r}: vertex 2 differs between faces d0 and d1"
        return None

    def face(self, name: str, positions: tuple[int, ...]) -> tuple[str, tuple[int, ...]]:
        """Restrict the nondegenerate simplex ``name`` to the vertex set ``positions``.

        Returns the normal form (nondegenerate simplex, surjection from
        [len(positions) - 1]).
        """
        dim = self.dimension_of[name]
        if positions == tuple(range(dim + 1)):
            return name, positions
        if dim == 1:
            (j,) = positions
            return self.edges[name][j], (0,)
        d0, d1, d2 = self.triangles[name]
        if len(positions) == 2:
            entry = {(1, 2): d0, (0, 2): d1, (0, 1): d2}[positions]
            if entry in self.edges:
                return entry, (0, 1)
            return entry, (0, 0)
        (j,) = positions
        vertex = (self.endpoints(d2)[0], self.endpoints(d2)[1], self.endpoints(d0)[1])[j]
        return vertex, (0,)


def surjections(n: int, k: int) -> list[tuple[int, ...]]:
    """Nondecreasing surjections [n] -> [k] as value tuples."""
    if k > n:
        return []
    out = []
    for steps in itertools.combinations(range(1, n + 1), k):
        values, level = [], 0
        for i in range(n + 1):
            if i in steps:
                level += 1
            values.append(level)
        out.append(tuple(values))
    return out


def simplex_dendrex(name: str, sigma: Sequence[int]) -> Dendrex:
    return Dendrex("simplex", (name, tuple(sigma)))


class ExtensionByZero(DendroidalSet):
    """i_!X: agrees with X on linear trees and is empty at every other shape."""

    def __init__(self, sset: SimplicialSetFin, name: str = "simplicial"):
        super().__init__()
        problem = sset.validate()
        if problem is not None:
            raise ValueError(f"invalid simplicial set: {problem}")
        self.sset = sset
        self.name = name

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        chain = linear_chain(shape)
        if chain is None:
            return []
        n = len(chain) - 1
        out = []
        for k in range(min(n, 2) + 1):
            for sigma in surjections(n, k):
                for name in self.sset.nondegenerate(k):
                    out.append(simplex_dendrex(name, sigma))
        return out

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        name, sigma = d.payload
        target_chain = linear_chain(m.target)
        source_chain = linear_chain(m.source)
        if target_chain is None or source_chain is None:
            raise ValueError(f"{format_tree(m.target)} carries no simplices")
        position = {e: i for i, e in enumerate(target_chain)}
        beta = [sigma[position[m(e)]] for e in source_chain]
        image = tuple(sorted(set(beta)))
        rank = {j: i for i, j in enumerate(image)}
        collapse = [rank[b] for b in beta]
        face_name, tau = self.sset.face(name, image)
        return simplex_dendrex(face_name, [tau[c] for c in collapse])

    @property
    def arity_bound(self) -> int:
        return 1

    @property
    def description(self) -> str:
        return f"simplicial({self.name})"


def i_shriek(sset: SimplicialSetFin, name: str = "simplicial") -> ExtensionByZero:
    return ExtensionByZero(sset, name)


def standard_simplex(n: int) -> SimplicialSetFin:
    """Delta[n] for n <= 2."""
    if not 0 <= n <= 2:
        raise ValueError(f"only Delta[0..2] can be stored, got Delta[{n}]")
    vertices = tuple(f"v{i}" for i in range(n + 1))
    edges = {f"v{i}v{j}": (f"v{i}", f"v{j}") for i, j in itertools.combinations(range(n + 1), 2)}
    triangles = {"v0v1v2": ("v1v2", "v0v2", "v0v1")} if n == 2 else {}
    return SimplicialSetFin(vertices, edges, triangles)


def poset_nerve(elements: Sequence[str], less: Iterable[tuple[str, str]]) -> SimplicialSetFin:
    """The 2-skeleton of the nerve of a finite poset given by its strict order relation."""
    lt = set(less)
    edges = {f"{a}<{b}": (a, b) for a, b in sorted(lt)}
    triangles = {}
    for a, b, c in itertools.permutations(elements, 3):
        if (a, b) in lt and (b, c) in lt:
            triangles[f"{a}<{b}<{c}"] = (f"{b}<{c}", f"{a}<{c}", f"{a}<{b}")
    return SimplicialSetFin(tuple(elements), edges, triangles)


def random_simplicial_set(rng: random.Random, max_vertices: int = 8) -> SimplicialSetFin:
    """A random simplicial set: some vertices, random edges, and a triangle on some composable pairs."""
    count = rng.randint(1, max_vertices)
    vertices = tuple(f"p{i}" for i in range(count))
    edges: dict[str, tuple[str, str]] = {}
    for i in range(rng.randint(0, count + 2)):
        edges[f"e{i}"] = (rng.choice(vertices), rng.choice(vertices))
    triangles: dict[str, tuple[str, str, str]] = {}
    names = sorted(edges)
    for f in names:
        for g in names:
            if edges[f][1] != edges[g][0] or rng.random() > 0.2:
                continue
            closing = [h for h in names if edges[h] == (edges[f][0], edges[g][1])]
            if closing:
                triangles[f"t{len(triangles)}"] = (g, rng.choice(closing), f)
    return SimplicialSetFin(vertices, edges, triangles)



def sset_from_document(doc: "SimplicialListing") -> SimplicialSetFin:
    return SimplicialSetFin(tuple(doc.vertices), dict(doc.edges), dict(doc.triangles))
