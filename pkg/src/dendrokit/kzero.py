"""K0 of a dendroidal set: generators are eta-dendrices, one relation per corolla dendrex."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Optional

import networkx as nx

from .dset import (
    AttachedCell,
    AttachedCells,
    DendMap,
    Dendrex,
    DendroidalSet,
    DisjointUnion,
    NaturalityError,
    Quotient,
    check_naturality,
)
from .intlin import FgAbelianGroup, GroupHom, cokernel, induced_iso_check
from .omega import OmegaMap
from .tree import Tree, corolla, eta, linear

logger = logging.getLogger(__name__)

ETA = eta()


class BoundError(ValueError):
    """Raised when a K0 arity cutoff is below what the dendroidal set needs."""


def colour_map(t: Tree, edge: str) -> OmegaMap:
    """The map eta -> t picking out ``edge``."""
    return OmegaMap.of(ETA, t, {ETA.root: edge})


@dataclass
class K0Presentation:
    generators: list[Dendrex]
    relations: list[list[int]] = field(default_factory=list)
    provenance: list[str] = field(default_factory=list)
    arity_bound: int = 0

    @cached_property
    def index(self) -> dict[Dendrex, int]:
        return {x: i for i, x in enumerate(self.generators)}

    @cached_property
    def group(self) -> FgAbelianGroup:
        return cokernel(self.relations, len(self.generators))

    def unit(self, x: Dendrex) -> list[int]:
        row = [0] * len(self.generators)
        row[self.index[x]] = 1
        return row


def effective_arity_bound(d: DendroidalSet) -> int:
    return d.arity_bound


def presentation(d: DendroidalSet, arity_bound: Optional[int] = None) -> K0Presentation:
    """Generators d(eta); for n <= bound and x in d(C_n) the row x1 + ... + xn - x."""
    needed = effective_arity_bound(d)
    bound = needed if arity_bound is None else arity_bound
    if bound < needed:
        raise BoundError(f"arity bound {bound} is below the {needed} that {d.description} needs")
    pres = K0Presentation(generators=list(d.dendrices(ETA)), arity_bound=bound)
    for n in range(bound + 1):
        c = corolla(n)
        inputs = [colour_map(c, leaf) for leaf in c.vertices[0].inputs]
        output = colour_map(c, c.root)
        for x in d.dendrices(c):
            row = [0] * len(pres.generators)
            for m in inputs:
                row[pres.index[d.act(m, x)]] += 1
            row[pres.index[d.act(output, x)]] -= 1
            pres.relations.append(row)
            pres.provenance.append(f"C{n}: {x}")
    logger.debug(
        "presentation of %s: %d generators, %d relations", d.description, len(pres.generators), len(pres.relations)
    )
    return pres


def k0(d: DendroidalSet, arity_bound: Optional[int] = None) -> FgAbelianGroup:
    return presentation(d, arity_bound).group


def _matrix(f: DendMap, source: K0Presentation, target: K0Presentation) -> list[list[int]]:
    rows = []
    for x in source.generators:
        image = f(ETA, x)
        if image not in target.index:
            raise NaturalityError(f"{f.name}: {x} maps to {image}, which is not an eta-dendrex of the target")
        rows.append(target.unit(image))
    return rows


def induced(
    f: DendMap,
    source: Optional[K0Presentation] = None,
    target: Optional[K0Presentation] = None,
    check: bool = True,
) -> GroupHom:
    """f_* : K0(source) -> K0(target), given on generators by f at eta."""
    source = source or presentation(f.source)
    target = target or presentation(f.target)
    if check:
        shapes = [ETA, *(corolla(n) for n in range(source.arity_bound + 1))]
        problem = check_naturality(f, shapes)
        if problem is not None:
            raise NaturalityError(problem)
    return GroupHom.of(source.group, target.group, _matrix(f, source, target))


def pi0_underlying(d: DendroidalSet) -> list[list[Dendrex]]:
    """Connected components of the graph with vertices d(eta) and an edge per dendrex of d(L1)."""
    l1 = linear(1)
    top, bottom = colour_map(l1, "a0"), colour_map(l1, "a1")
    graph = nx.Graph()
    gens = list(d.dendrices(ETA))
    graph.add_nodes_from(range(len(gens)))
    index = {x: i for i, x in enumerate(gens)}
    for x in d.dendrices(l1):
        graph.add_edge(index[d.act(top, x)], index[d.act(bottom, x)])
    components = sorted(sorted(c) for c in nx.connected_components(graph))
    return [[gens[i] for i in c] for c in components]


def lambda_map(d: DendroidalSet, pres: Optional[K0Presentation] = None) -> list[tuple[list[Dendrex], tuple[int, ...]]]:
    """Each component of the underlying simplicial set with the K0 class of a representative."""
    pres = pres or presentation(d)
    group = pres.group
    out = []
    for component in pi0_underlying(d):
        classes = {group.coordinates(pres.unit(x)) for x in component}
        if len(classes) != 1:
            raise ArithmeticError(f"component {component[0]} has {len(classes)} distinct K0 classes")
        out.append((component, classes.pop()))
    return out


def lambda_is_injective(d: DendroidalSet) -> bool:
    classes = [c for _, c in lambda_map(d)]
    return len(set(classes)) == len(classes)


def lambda_is_bijective(d: DendroidalSet) -> bool:
    pres = presentation(d)
    order = pres.group.order()
    classes = [c for _, c in lambda_map(d, pres)]
    return order is not None and len(set(classes)) == len(classes) == order


def _stack(blocks: list[tuple[list[list[int]], int]], width: int) -> list[list[int]]:
    """Place relation blocks side by side at the given column offsets."""
    rows = []
    for block, offset in blocks:
        for r in block:
            rows.append([0] * offset + list(r) + [0] * (width - offset - len(r)))
    return rows


def cokernel_presentation(
    f: DendMap, source: Optional[K0Presentation] = None, target: Optional[K0Presentation] = None
) -> FgAbelianGroup:
    """coker(f_*): the target relations together with the image of every source generator."""
    source = source or presentation(f.source)
    target = target or presentation(f.target)
    return cokernel(target.relations + _matrix(f, source, target), len(target.generators))


def quotient_colimit_check(q: Quotient) -> bool:
    """K0(D/D0) is the cokernel of K0(D0) -> K0(D), through the projection."""
    base = presentation(q.base)
    incl = DendMap(q.sub, q.base, lambda shape, x: x, name=f"incl({q.sub.description})")
    coker = cokernel_presentation(incl, target=base)
    target = presentation(q)
    return induced_iso_check(GroupHom.of(coker, target.group, _matrix(q.projection, base, target)))


def attach_colimit_check(p: AttachedCell) -> bool:
    """K0 of the pushout is the pushout of K0(D) <- K0(horn) -> K0(Omega[T])."""
    base = presentation(p.base)
    rep = presentation(p.horn.ambient)
    horn = presentation(p.horn)
    width = len(base.generators) + len(rep.generators)
    offset = len(base.generators)
    rows = _stack([(base.relations, 0), (rep.relations, offset)], width)
    for h in horn.generators:
        row = [0] * width
        row[base.index[p.attaching(ETA, h)]] += 1
        row[offset + rep.index[h]] -= 1
        rows.append(row)
    pushout = cokernel(rows, width)
    target = presentation(p)
    matrix = _matrix(p.inclusion, base, target) + _matrix(p.cell_map, rep, target)
    return induced_iso_check(GroupHom.of(pushout, target.group, matrix))


def union_colimit_check(u: DisjointUnion) -> bool:
    """K0 of a disjoint union is the direct sum, through the injections."""
    parts = [presentation(s) for s in u.summands]
    width = sum(len(p.generators) for p in parts)
    blocks, offset = [], 0
    for p in parts:
        blocks.append((p.relations, offset))
        offset += len(p.generators)
    summed = cokernel(_stack(blocks, width), width)
    target = presentation(u)
    matrix = []
    for i, p in enumerate(parts):
        matrix.extend(_matrix(u.injection(i), p, target))
    return induced_iso_check(GroupHom.of(summed, target.group, matrix))


def colimit_check(d: DendroidalSet) -> bool:
    if isinstance(d, Quotient):
        return quotient_colimit_check(d)
    if isinstance(d, AttachedCell):
        return attach_colimit_check(d)
    if isinstance(d, DisjointUnion):
        return union_colimit_check(d)
    raise TypeError(f"{d.description} is not a pushout, quotient or coproduct")


def inclusion_is_k0_iso(p: AttachedCell | AttachedCells) -> bool:
    """Attaching along horns leaves K0 unchanged through the inclusion."""
    return induced_iso_check(induced(p.inclusion))


def hom_count_to_cyclic(d: DendroidalSet, m: int) -> int:
    """|Hom(K0(d), Z/m)|."""
    group = k0(d)
    count = m**group.free_rank
    for f in group.invariant_factors:
        count *= gcd(f, m)
    return count


def cocycle_count(d: DendroidalSet, m: int, limit: int = 8) -> int:
    """Maps d -> i(Z/m): labellings of eta-dendrices by Z/m satisfying every corolla relation mod m."""
    pres = presentation(d)
    n = len(pres.generators)
    if n > limit:
        raise BoundError(f"{n} generators is too many to enumerate labellings (limit {limit})")
    count = 0
    for labels in itertools.product(range(m), repeat=n):
        if all(sum(r * x for r, x in zip(row, labels)) % m == 0 for row in pres.relations):
            count += 1
    return count
