"""Horn maps, filler search and bounded inner / full Kan checks."""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .dset import AttachedCells, DendMap, Dendrex, DendroidalSet, HornSubobject
from .dset.representable import horn as make_horn
from .omega import OmegaMap, compose, hom, horn_labels, is_injective
from .tree import Tree, enumerate_trees, format_tree

logger = logging.getLogger(__name__)

INNER = "inner"
FULL = "full"


@dataclass(frozen=True)
class HornMap:
    """A map Lambda^a[T] -> D, given by its value on every face in the horn.

    ``faces`` pairs each face label with a dendrex at the source of that face.
    """

    tree: Tree
    label: str
    faces: tuple[tuple[str, Dendrex], ...]

    def __str__(self) -> str:
        body = ", ".join(f"{name}: {x}" for name, x in self.faces)
        return f"horn({format_tree(self.tree)}, {self.label}) -> {{{body}}}"


@dataclass(frozen=True)
class _HornShape:
    horn: HornSubobject
    # (face index, key) -> restriction map into that face; keys shared by two or more faces
    shared: tuple[tuple[int, tuple[Tree, OmegaMap], OmegaMap], ...]


def _subshapes(s: Tree) -> list[Tree]:
    """Canonical shapes small enough to embed into ``s``."""
    return enumerate_trees(len(s.vertices), max(1, len(s.edges) - 1), len(s.edges))


@lru_cache(maxsize=None)
def _horn_shape(t: Tree, label: str) -> _HornShape:
    horn = make_horn(t, label)
    owners: dict[tuple[Tree, OmegaMap], list[tuple[int, OmegaMap]]] = {}
    for i, (_, delta) in enumerate(horn.faces):
        for u in _subshapes(delta.source):
            for h in hom(u, delta.source):
                if is_injective(h):
                    owners.setdefault((u, compose(delta, h)), []).append((i, h))
    shared = tuple(
        (i, key, h)
        for key, entries in owners.items()
        if len({i for i, _ in entries}) > 1
        for i, h in entries
    )
    return _HornShape(horn, shared)


def horn_maps(d: DendroidalSet, t: Tree, label: str) -> list[HornMap]:
    """All natural maps from the horn into ``d``, by backtracking over face images.

    Two face images are compatible when they agree on every shape that
    embeds into both faces compatibly inside T.
    """
    shape = _horn_shape(t, label)
    faces = shape.horn.faces
    constraints: list[list[tuple[tuple[Tree, OmegaMap], OmegaMap]]] = [[] for _ in faces]
    for i, key, h in shape.shared:
        constraints[i].append((key, h))
    candidates: list[list[tuple[Dendrex, dict]]] = []
    for i, (_, delta) in enumerate(faces):
        options = []
        for x in d.dendrices(delta.source):
            signature = {key: d.act(h, x) for key, h in constraints[i]}
            options.append((x, signature))
        candidates.append(options)

    found: list[HornMap] = []
    chosen: list[tuple[Dendrex, dict]] = []
    seen: dict = {}

    def extend(i: int) -> None:
        if i == len(faces):
            found.append(HornMap(t, label, tuple((faces[k][0], chosen[k][0]) for k in range(len(faces)))))
            return
        for x, signature in candidates[i]:
            if any(seen.get(key, value) != value for key, value in signature.items()):
                continue
            added = [key for key in signature if key not in seen]
            for key in added:
                seen[key] = signature[key]
            chosen.append((x, signature))
            extend(i + 1)
            chosen.pop()
            for key in added:
                del seen[key]

    extend(0)
    logger.debug("%d horn maps into %s from horn(%s, %s)", len(found), d.description, format_tree(t), label)
    return found


def horn_map_dendmap(d: DendroidalSet, hm: HornMap) -> DendMap:
    """The horn map as a map of dendroidal sets from the horn subobject into ``d``."""
    horn = _horn_shape(hm.tree, hm.label).horn
    images = [x for _, x in hm.faces]

    def component(shape: Tree, y: Dendrex) -> Dendrex:
        idx, h = horn.witness(shape, y)
        return d.act(h, images[idx])

    return DendMap(horn, d, component, name=str(hm))


def restrictions(d: DendroidalSet, t: Tree, label: str, x: Dendrex) -> tuple[Dendrex, ...]:
    return tuple(d.act(delta, x) for _, delta in _horn_shape(t, label).horn.faces)


def has_filler(d: DendroidalSet, hm: HornMap) -> Optional[Dendrex]:
    """A dendrex at the horn's tree restricting to ``hm`` on every face, or None."""
    wanted = tuple(x for _, x in hm.faces)
    for x in d.dendrices(hm.tree):
        if restrictions(d, hm.tree, hm.label, x) == wanted:
            return x
    return None


@dataclass
class HornTally:
    tree: Tree
    label: str
    maps: int = 0
    fillers: int = 0
    counterexample: Optional[HornMap] = None

    @property
    def passed(self) -> bool:
        return self.counterexample is None


@dataclass
class KanReport:
    mode: str
    max_vertices: int
    max_arity: int
    tallies: list[HornTally] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(t.passed for t in self.tallies)

    @property
    def counterexample(self) -> Optional[HornMap]:
        for t in self.tallies:
            if t.counterexample is not None:
                return t.counterexample
        return None


def _tally(d: DendroidalSet, t: Tree, label: str) -> HornTally:
    tally = HornTally(t, label)
    fillable: dict[tuple[Dendrex, ...], bool] = {}
    for x in d.dendrices(t):
        fillable[restrictions(d, t, label, x)] = True
    for hm in horn_maps(d, t, label):
        tally.maps += 1
        if tuple(x for _, x in hm.faces) in fillable:
            tally.fillers += 1
        elif tally.counterexample is None:
            tally.counterexample = hm
    return tally


def horn_tasks(max_vertices: int, max_arity: int, mode: str) -> list[tuple[Tree, str]]:
    tasks = []
    for t in enumerate_trees(max_vertices, max_arity):
        labels = sorted(t.inner_edges) if mode == INNER else horn_labels(t)
        tasks.extend((t, label) for label in labels)
    return tasks


def check_kan(d: DendroidalSet, max_vertices: int, max_arity: int, mode: str, workers: int = 1) -> KanReport:
    if max_vertices < 1 or max_arity < 1:
        raise ValueError(f"Kan check bounds must be >= 1, got ({max_vertices}, {max_arity})")
    tasks = horn_tasks(max_vertices, max_arity, mode)
    logger.info("checking %d %s horns of %s", len(tasks), mode, d.description)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            tallies = list(pool.map(lambda task: _tally(d, *task), tasks))
    else:
        tallies = [_tally(d, t, label) for t, label in tasks]
    report = KanReport(mode, max_vertices, max_arity, tallies)
    if not report.passed:
        logger.info("%s is not %s Kan: %s", d.description, mode, report.counterexample)
    return report


def check_inner_kan(d: DendroidalSet, max_vertices: int = 3, max_arity: int = 3, workers: int = 1) -> KanReport:
    return check_kan(d, max_vertices, max_arity, INNER, workers)


def check_fully_kan(d: DendroidalSet, max_vertices: int = 3, max_arity: int = 3, workers: int = 1) -> KanReport:
    return check_kan(d, max_vertices, max_arity, FULL, workers)


def fibrant_step(d: DendroidalSet, max_vertices: int, max_arity: int, inner_only: bool = False) -> AttachedCells:
    """Attach a filler along every unfilled horn map within bounds, all in one pushout."""
    attachings = []
    for t, label in horn_tasks(max_vertices, max_arity, INNER if inner_only else FULL):
        fillable = {restrictions(d, t, label, x) for x in d.dendrices(t)}
        for hm in horn_maps(d, t, label):
            if tuple(x for _, x in hm.faces) not in fillable:
                attachings.append(horn_map_dendmap(d, hm))
    logger.info("fibrant step on %s attaches %d cells", d.description, len(attachings))
    return AttachedCells(d, attachings)
