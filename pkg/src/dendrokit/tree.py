"""Finite rooted trees: the objects of the tree category Omega.

Trees are drawn with the root at the bottom. An edge carries at most one
vertex *above* it (the vertex whose output it is) and at most one vertex
*below* it (the vertex it is an input of). Leaves are the edges with no vertex
above them; a vertex with no inputs caps its output edge (a stump).
"""
from __future__ import annotations

import itertools
import logging
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, NamedTuple, Optional

logger = logging.getLogger(__name__)

NAME_RE = re.compile(r"[A-Za-z0-9_]+")


class TreeError(ValueError):
    """Raised when a tree violates its invariants or an operation's precondition."""


class Vertex(NamedTuple):
    output: str
    inputs: tuple[str, ...]

    @property
    def arity(self) -> int:
        return len(self.inputs)


@dataclass(frozen=True)
class Tree:
    """A finite rooted non-planar tree.

    Vertices are identified by their output edge. Input sequences are kept in
    the order given for reproducible output, but every semantic operation
    treats them as multisets. Equality is identifier-level; use
    :func:`are_isomorphic` for isomorphism.
    """

    edges: tuple[str, ...]
    root: str
    vertices: tuple[Vertex, ...]

    @classmethod
    def build(cls, root: str, vertices: Iterable[Vertex], edges: Iterable[str] = ()) -> "Tree":
        """Build and validate a tree; edges default to those mentioned by vertices."""
        vertices = tuple(sorted(Vertex(v.output, tuple(v.inputs)) for v in vertices))
        names = {root, *edges}
        for v in vertices:
            names.add(v.output)
            names.update(v.inputs)
        tree = cls(edges=tuple(sorted(names)), root=root, vertices=vertices)
        problem = validate(tree)
        if problem is not None:
            raise TreeError(problem)
        return tree

    @cached_property
    def above(self) -> dict[str, Vertex]:
        """Edge -> the vertex whose output it is."""
        return {v.output: v for v in self.vertices}

    @cached_property
    def below(self) -> dict[str, Vertex]:
        """Edge -> the vertex it is an input of."""
        return {e: v for v in self.vertices for e in v.inputs}

    @cached_property
    def leaves(self) -> frozenset[str]:
        return frozenset(e for e in self.edges if e not in self.above)

    @cached_property
    def inner_edges(self) -> frozenset[str]:
        return frozenset(e for e in self.edges if e in self.above and e in self.below)

    @cached_property
    def max_arity(self) -> int:
        return max((v.arity for v in self.vertices), default=0)

    @cached_property
    def code(self) -> bytes:
        return canonical_code(self)

    def vertex(self, output: str) -> Vertex:
        try:
            return self.above[output]
        except KeyError:
            raise TreeError(f"no vertex with output {output!r} in {format_tree(self)}") from None

    def upper_edges(self, edge: str) -> list[str]:
        """Edges weakly above ``edge``, in depth-first order."""
        out: list[str] = []
        stack = [edge]
        while stack:
            e = stack.pop()
            out.append(e)
            v = self.above.get(e)
            if v is not None:
                stack.extend(reversed(v.inputs))
        return out

    def __str__(self) -> str:
        return format_tree(self)


@dataclass(frozen=True)
class Subtree:
    """A subtree of an ambient tree, i.e. an operation of the free operad Omega(T)."""

    root: str
    edges: frozenset[str]
    vertices: tuple[str, ...]
    leaves: frozenset[str]

    @property
    def is_identity(self) -> bool:
        return not self.vertices


def validate(t: Tree) -> Optional[str]:
    """Return None when ``t`` is a valid tree, else a message naming the first violation."""
    edge_set = set(t.edges)
    if len(edge_set) != len(t.edges):
        return "duplicate edge identifiers"
    if t.root not in edge_set:
        return f"root {t.root!r} is not an edge"
    outputs: set[str] = set()
    inputs: set[str] = set()
    for v in t.vertices:
        for e in (v.output, *v.inputs):
            if e not in edge_set:
                return f"vertex at {v.output!r} mentions unknown edge {e!r}"
        if v.output in outputs:
            return f"edge {v.output!r} is the output of more than one vertex"
        outputs.add(v.output)
        for e in v.inputs:
            if e in inputs:
                return f"edge {e!r} is an input of more than one vertex"
            inputs.add(e)
    roots = sorted(edge_set - inputs)
    if len(roots) != 1:
        return f"expected exactly one edge that is an input of no vertex, found {roots}"
    if roots[0] != t.root:
        return f"declared root {t.root!r} is an input of a vertex; the root would be {roots[0]!r}"
    below = {e: v for v in t.vertices for e in v.inputs}
    for e in t.edges:
        seen = {e}
        current = e
        while current != t.root:
            current = below[current].output
            if current in seen:
                return f"cycle through edge {current!r}"
            seen.add(current)
    return None


def leaves(t: Tree) -> frozenset[str]:
    return t.leaves


def inner_edges(t: Tree) -> frozenset[str]:
    return t.inner_edges


def leaves_over(t: Tree, edge: str) -> frozenset[str]:
    """Leaves of ``t`` lying weakly above ``edge``."""
    return frozenset(e for e in t.upper_edges(edge) if e in t.leaves)


def eta(name: str = "a0") -> Tree:
    return Tree(edges=(name,), root=name, vertices=())


def linear(n: int) -> Tree:
    """L_n: edges a0 (top leaf) .. an (root) joined by n unary vertices."""
    if n < 0:
        raise TreeError(f"linear tree needs n >= 0, got {n}")
    return Tree.build(f"a{n}", [Vertex(f"a{i}", (f"a{i - 1}",)) for i in range(1, n + 1)], [f"a{n}"])


def corolla(n: int) -> Tree:
    """C_n: one vertex with leaves a1..an and root b."""
    if n < 0:
        raise TreeError(f"corolla needs n >= 0, got {n}")
    return Tree.build("b", [Vertex("b", tuple(f"a{i}" for i in range(1, n + 1)))])


def relabel(t: Tree, mapping: Mapping[str, str]) -> Tree:
    """Rename edges; unmapped edges keep their names."""
    rename = lambda e: mapping.get(e, e)  # noqa: E731
    return Tree.build(
        rename(t.root),
        [Vertex(rename(v.output), tuple(rename(i) for i in v.inputs)) for v in t.vertices],
        [rename(e) for e in t.edges],
    )


def shuffled(t: Tree, rng: random.Random) -> Tree:
    """A random relabelling of ``t`` with input sequences permuted."""
    fresh = [f"x{i}" for i in range(len(t.edges))]
    rng.shuffle(fresh)
    mapping = dict(zip(t.edges, fresh))
    vertices = []
    for v in t.vertices:
        ins = [mapping[i] for i in v.inputs]
        rng.shuffle(ins)
        vertices.append(Vertex(mapping[v.output], tuple(ins)))
    return Tree.build(mapping[t.root], vertices, mapping.values())


def graft(lower: Tree, leaf: str, upper: Tree) -> Tree:
    """Identify the root of ``upper`` with the leaf ``leaf`` of ``lower``.

    The identified edge keeps the name ``leaf``. Apart from it the edge names of
    the two trees must be disjoint.
    """
    if leaf not in lower.leaves:
        raise TreeError(f"{leaf!r} is not a leaf of {format_tree(lower)}")
    upper = relabel(upper, {upper.root: leaf}) if upper.root != leaf else upper
    clash = (set(lower.edges) & set(upper.edges)) - {leaf}
    if clash:
        raise TreeError(f"cannot graft: edge names {sorted(clash)} occur in both trees")
    return Tree.build(lower.root, [*lower.vertices, *upper.vertices], [*lower.edges, *upper.edges])


def cnk(n: int, k: int) -> Tree:
    """C_{n,k}: an n-corolla (leaves a1..an) grafted on the last leaf of a k-corolla (root c).

    The lower leaves are b1..b(k-1) and the grafting edge is always called
    ``bk``, so ``bk`` names the inner edge whatever k is.
    """
    if n < 0 or k < 1:
        raise TreeError(f"C(n,k) needs n >= 0 and k >= 1, got ({n},{k})")
    lower = Tree.build("c", [Vertex("c", (*(f"b{i}" for i in range(1, k)), "bk"))])
    upper = Tree.build("bk", [Vertex("bk", tuple(f"a{i}" for i in range(1, n + 1)))])
    return graft(lower, "bk", upper)


def linear_chain(t: Tree) -> Optional[list[str]]:
    """Edges of a linear tree from the top leaf down to the root; None if ``t`` is not linear."""
    if any(v.arity != 1 for v in t.vertices):
        return None
    chain = [t.root]
    while chain[-1] in t.above:
        chain.append(t.above[chain[-1]].inputs[0])
    chain.reverse()
    return chain


def spanned_subtree(t: Tree, r: str, leaf_set: Iterable[str]) -> Optional[Subtree]:
    """The unique subtree of ``t`` with root ``r`` and leaf set exactly ``leaf_set``, if any."""
    wanted = frozenset(leaf_set)
    reached: set[str] = set()
    edges: set[str] = set()
    vertices: list[str] = []
    stack = [r]
    while stack:
        e = stack.pop()
        edges.add(e)
        if e in wanted:
            reached.add(e)
            continue
        v = t.above.get(e)
        if v is None:
            return None
        vertices.append(e)
        stack.extend(v.inputs)
    if reached != wanted:
        return None
    return Subtree(root=r, edges=frozenset(edges), vertices=tuple(sorted(vertices)), leaves=wanted)


def cuts(t: Tree, r: str) -> list[frozenset[str]]:
    """Every leaf set L for which spanned_subtree(t, r, L) exists."""
    return _cut_table(t)[r]


def _cut_table(t: Tree) -> dict[str, list[frozenset[str]]]:
    table = t.__dict__.get("_cuts")
    if table is None:
        table = {}
        for e in reversed(_bfs(t)):
            options = {frozenset((e,))}
            v = t.above.get(e)
            if v is not None:
                for combo in itertools.product(*(table[i] for i in v.inputs)):
                    options.add(frozenset().union(*combo))
            table[e] = sorted(options, key=lambda s: (len(s), sorted(s)))
        t.__dict__["_cuts"] = table
    return table


def _bfs(t: Tree) -> list[str]:
    order = [t.root]
    for e in order:
        v = t.above.get(e)
        if v is not None:
            order.extend(v.inputs)
    return order


def canonical_code(t: Tree) -> bytes:
    """Relabelling- and input-order-invariant encoding; equal codes iff isomorphic."""

    def encode(e: str) -> bytes:
        v = t.above.get(e)
        if v is None:
            return b"|"
        return b"(" + b"".join(sorted(encode(i) for i in v.inputs)) + b")"

    return encode(t.root)


def are_isomorphic(s: Tree, t: Tree) -> bool:
    return canonical_code(s) == canonical_code(t)


def _decode(code: bytes) -> Tree:
    """Build the tree of a canonical code with edges e0 (root), e1, ... in preorder."""
    counter = itertools.count()
    vertices: list[Vertex] = []
    pos = 0

    def parse() -> str:
        nonlocal pos
        name = f"e{next(counter)}"
        if code[pos:pos + 1] == b"|":
            pos += 1
            return name
        pos += 1
        children = []
        while code[pos:pos + 1] != b")":
            children.append(parse())
        pos += 1
        vertices.append(Vertex(name, tuple(children)))
        return name

    root = parse()
    return Tree.build(root, vertices, [root])


def enumerate_trees(max_vertices: int, max_arity: int, max_edges: Optional[int] = None) -> list[Tree]:
    """One tree per isomorphism class within the bounds, ordered by canonical code."""
    if max_vertices < 0 or max_arity < 0:
        raise TreeError("bounds must be non-negative")
    edge_cap = max_edges if max_edges is not None else 1 + max_vertices * max_arity
    # by_size[v] holds (code, edge count) of upper subtrees with exactly v vertices
    by_size: list[list[tuple[bytes, int]]] = [[(b"|", 1)]]
    for v in range(1, max_vertices + 1):
        pool = sorted((code, size, edges) for size in range(v) for code, edges in by_size[size])
        shapes: set[tuple[bytes, int]] = set()
        for combo in _multisets(pool, max_arity, v - 1, edge_cap - 1):
            edges = 1 + sum(e for _, _, e in combo)
            shapes.add((b"(" + b"".join(sorted(c for c, _, _ in combo)) + b")", edges))
        by_size.append(sorted(shapes))
    codes = sorted(code for layer in by_size for code, _ in layer)
    trees = [_decode(code) for code in codes]
    if max_edges is not None:
        trees = [t for t in trees if len(t.edges) <= max_edges]
    logger.debug("enumerated %d trees (vertices<=%d, arity<=%d)", len(trees), max_vertices, max_arity)
    return trees


def _multisets(pool, max_len: int, vertices: int, edges: int, start: int = 0):
    """Nondecreasing selections from ``pool`` using exactly ``vertices`` vertices and at most ``edges`` edges."""
    if vertices == 0:
        yield ()
    if max_len == 0:
        return
    for idx in range(start, len(pool)):
        _, size, size_edges = pool[idx]
        if size_edges > edges:
            continue
        if size > vertices:
            continue
        for rest in _multisets(pool, max_len - 1, vertices - size, edges - size_edges, idx):
            yield (pool[idx], *rest)


def parse_tree(text: str) -> Tree:
    """Parse the tree grammar, e.g. ``e[c[a,b],d]``, ``x`` or ``r[]``."""
    from .expr import Parser

    parser = Parser(text)
    tree = parser.tree()
    parser.expect_end()
    return tree


def format_tree(t: Tree) -> str:
    def render(e: str) -> str:
        v = t.above.get(e)
        if v is None:
            return e
        return f"{e}[{','.join(render(i) for i in v.inputs)}]"

    return render(t.root)
