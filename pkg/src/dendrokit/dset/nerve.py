"""The dendroidal nerve of a permutative groupoid."""
from __future__ import annotations

import itertools
import logging
from typing import Iterable

from ..omega import OmegaMap
from ..smc import PermutativeGroupoid
from ..tree import Tree, spanned_subtree
from .base import Dendrex, DendroidalSet

logger = logging.getLogger(__name__)


def nerve_dendrex(colours: dict[str, str], operations: dict[str, str]) -> Dendrex:
    return Dendrex("nerve", (tuple(sorted(colours.items())), tuple(sorted(operations.items()))))


class Nerve(DendroidalSet):
    """N_d(P)_T = Hom(Omega(T), P).

    A dendrex colours every edge by an object and every vertex (keyed by its
    output edge) by a morphism from the tensor of its input colours, taken in
    the stored input order, to its output colour.
    """

    def __init__(self, groupoid: PermutativeGroupoid):
        super().__init__()
        self.groupoid = groupoid

    def _enumerate(self, shape: Tree) -> Iterable[Dendrex]:
        p = self.groupoid
        order = [shape.root]
        for e in order:
            v = shape.above.get(e)
            if v is not None:
                order.extend(v.inputs)
        pending = [shape.above[e] for e in order if e in shape.above]
        found: list[Dendrex] = []
        colours: dict[str, str] = {}
        operations: dict[str, str] = {}

        def extend(idx: int) -> None:
            if idx == len(pending):
                found.append(nerve_dendrex(colours, operations))
                return
            v = pending[idx]
            out = colours[v.output]
            for ins in itertools.product(p.objects, repeat=v.arity):
                ops = p.operations(ins, out)
                if not ops:
                    continue
                colours.update(zip(v.inputs, ins))
                for op in ops:
                    operations[v.output] = op
                    extend(idx + 1)
            for i in v.inputs:
                colours.pop(i, None)
            operations.pop(v.output, None)

        for root_colour in p.objects:
            colours = {shape.root: root_colour}
            operations = {}
            extend(0)
        return found

    def act(self, m: OmegaMap, d: Dendrex) -> Dendrex:
        p = self.groupoid
        target = m.target
        colour = dict(d.payload[0])
        operation = dict(d.payload[1])

        def evaluate(e: str, stop: frozenset[str]) -> tuple[list[str], str]:
            """Leaves (in evaluation order) and composite operation of the subtree above ``e``."""
            if e in stop:
                return [e], p.identities[colour[e]]
            v = target.above[e]
            leaves: list[str] = []
            parts: list[str] = []
            for i in v.inputs:
                sub_leaves, f = evaluate(i, stop)
                leaves.extend(sub_leaves)
                parts.append(f)
            return leaves, p.compose(operation[e], p.tensor_maps(parts))

        new_colours = {e: colour[m(e)] for e in m.source.edges}
        new_operations = {}
        for v in m.source.vertices:
            images = [m(i) for i in v.inputs]
            root = m(v.output)
            if spanned_subtree(target, root, images) is None:
                raise ValueError(f"{m} does not send the vertex at {v.output!r} to an operation")
            leaves, f = evaluate(root, frozenset(images))
            if leaves != images:
                objs = [colour[x] for x in images]
                position = {x: j for j, x in enumerate(images)}
                f = p.compose(f, p.reorder(objs, [position[x] for x in leaves]))
            new_operations[v.output] = f
        return nerve_dendrex(new_colours, new_operations)

    @property
    def arity_bound(self) -> int:
        return 2

    @property
    def description(self) -> str:
        return f"nerve({self.groupoid.name})"


def nerve(groupoid: PermutativeGroupoid) -> Nerve:
    return Nerve(groupoid)
