"""Named verification suites run by ``dendrokit verify``.

Every suite takes a seeded ``random.Random`` and a ``SuiteBounds`` and
returns a list of ``CheckResult``. Exhaustive families are reported as one
check per size class with the first failure in ``detail``.
"""
from __future__ import annotations

import logging
import random
from collections import defaultdict
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

import networkx as nx

from . import dset
from .dset import DendroidalSet, Subobject
from .intlin import FgAbelianGroup, GroupHom, group_completion, induced_iso_check, monoid_table_presentation, same_lattice
from .kan import check_fully_kan, check_inner_kan, fibrant_step, horn_map_dendmap, horn_maps
from .kzero import (
    ETA,
    attach_colimit_check,
    inclusion_is_k0_iso,
    induced,
    k0,
    lambda_is_bijective,
    lambda_is_injective,
    presentation,
    quotient_colimit_check,
    union_colimit_check,
)
from .models import CheckResult, VerifyDocument
from .omega import horn_labels
from .smc import (
    PermutativeGroupoid,
    cyclic_group,
    from_commutative_monoid,
    groupoid_corpus,
    max_monoid,
    saturating_monoid,
)
from .tree import Tree, cnk, corolla, enumerate_trees, format_tree, linear

logger = logging.getLogger(__name__)


@dataclass
class SuiteBounds:
    """Sizes for the exhaustive and sampled families."""

    max_vertices: int = 3
    max_arity: int = 3
    max_edges: int = 6
    horn_vertices: int = 4
    monoid_order: int = 5
    kan_monoid_order: Optional[int] = None
    simplicial_samples: int = 50
    attach_samples: int = 100
    quotient_samples: int = 25
    fibrant_vertices: int = 2
    fibrant_arity: int = 2


def _is_free(group: FgAbelianGroup, rank: int) -> bool:
    return group.free_rank == rank and not group.invariant_factors


def _family(name: str, cases: Iterable[tuple[str, Callable[[], Optional[str]]]]) -> list[CheckResult]:
    """Run grouped cases; each case returns None or a failure message."""
    groups: dict[str, list[Callable[[], Optional[str]]]] = defaultdict(list)
    for key, case in cases:
        groups[key].append(case)
    results = []
    for key, group in groups.items():
        failure = None
        for case in group:
            failure = case()
            if failure is not None:
                break
        results.append(
            CheckResult(
                name=f"{name} [{key}]",
                passed=failure is None,
                detail=failure or f"{len(group)} cases",
            )
        )
    return results


def _check(name: str, passed: bool, detail: str = "") -> CheckResult:
    return CheckResult(name=name, passed=passed, detail=detail)


def small_trees(max_edges: int) -> list[Tree]:
    """Every isomorphism class of trees with at most ``max_edges`` edges."""
    return enumerate_trees(max_edges, max(1, max_edges - 1), max_edges)


# -- representables and Segal cores -------------------------------------------


def representables_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    def case(t: Tree) -> Callable[[], Optional[str]]:
        def run() -> Optional[str]:
            group = k0(dset.representable(t))
            if not _is_free(group, len(t.leaves)):
                return f"K0(repr({format_tree(t)})) = {group}, expected Z^{len(t.leaves)}"
            return None

        return run

    return _family(
        "K0 of a representable is free on its leaves",
        ((f"{len(t.edges)} edges", case(t)) for t in small_trees(bounds.max_edges)),
    )


def segal_core_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    def case(t: Tree) -> Callable[[], Optional[str]]:
        def run() -> Optional[str]:
            core = dset.segal_core(t)
            group = k0(core)
            if not _is_free(group, len(t.leaves)):
                return f"K0(core({format_tree(t)})) = {group}, expected Z^{len(t.leaves)}"
            if not induced_iso_check(induced(core.inclusion)):
                return f"core({format_tree(t)}) -> repr does not induce an isomorphism"
            return None

        return run

    return _family(
        "Segal core inclusion is a K0 isomorphism",
        ((f"{len(t.edges)} edges", case(t)) for t in small_trees(bounds.max_edges)),
    )


# -- horns ---------------------------------------------------------------------


def horns_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    def case(t: Tree, label: str) -> Callable[[], Optional[str]]:
        def run() -> Optional[str]:
            h = dset.horn(t, label)
            if not induced_iso_check(induced(h.inclusion)):
                return f"horn({format_tree(t)}, {label}) -> repr does not induce an isomorphism"
            return None

        return run

    cases = (
        (f"{len(t.vertices)} vertices", case(t, label))
        for t in enumerate_trees(bounds.horn_vertices, bounds.max_arity)
        for label in horn_labels(t)
    )
    return _family("horn inclusions are K0 isomorphisms", cases)


def displayed_horn_relations(n: int, k: int) -> dict[str, list[dict[str, int]]]:
    """The two relations of each horn of C_{n,k}, keyed by horn label, as edge -> coefficient."""
    a = [f"a{i}" for i in range(1, n + 1)]
    b = [*(f"b{i}" for i in range(1, k)), "bk"]

    def relation(inputs: list[str], output: str) -> dict[str, int]:
        row: dict[str, int] = defaultdict(int)
        for e in inputs:
            row[e] += 1
        row[output] -= 1
        return dict(row)

    top = relation(a, "bk")
    bottom = relation(b, "c")
    composite = relation(b[:-1] + a, "c")
    return {"bk": [top, bottom], "@bk": [top, composite], "@c": [bottom, composite]}


def horn_tables_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    results = []
    for n in range(4):
        for k in range(1, 4):
            t = cnk(n, k)
            order = sorted(t.edges)
            column = {e: i for i, e in enumerate(order)}
            expected = displayed_horn_relations(n, k)
            labels = horn_labels(t)
            if sorted(labels) != sorted(expected):
                results.append(_check(f"C({n},{k}) horn labels", False, f"found {labels}"))
                continue
            for label in labels:
                pres = presentation(dset.horn(t, label))
                rows = []
                for rel in pres.relations:
                    row = [0] * len(order)
                    for x, coeff in zip(pres.generators, rel):
                        row[column[x.payload(ETA.root)]] += coeff
                    rows.append(row)
                shown = [[rel.get(e, 0) for e in order] for rel in expected[label]]
                matched = len(pres.generators) == len(order) and same_lattice(rows, shown, len(order))
                group = pres.group
                results.append(
                    _check(
                        f"horn(C({n},{k}), {label})",
                        matched and _is_free(group, n + k - 1),
                        f"{group}" if matched else f"{group}; relations differ from the displayed pair",
                    )
                )
    return results


# -- components and group completion -----------------------------------------


def components_oracle(sset: dset.SimplicialSetFin) -> int:
    graph = nx.MultiGraph()
    graph.add_nodes_from(sset.vertices)
    graph.add_edges_from(sset.edges.values())
    return nx.number_connected_components(graph)


def nerve_object(x: dset.Dendrex) -> str:
    """The colour of an eta-dendrex of a nerve."""
    colours, _ = x.payload
    return colours[0][1]


def completion_check(p: PermutativeGroupoid) -> Optional[str]:
    """None when K0(N p) -> group completion of pi0(p), object -> its class, is an isomorphism."""
    monoid = p.pi0_monoid()
    generators, relations = monoid_table_presentation(monoid.elements, monoid.unit, monoid.table)
    completion = group_completion(generators, relations)
    classes = {obj: c for c in monoid.elements for obj in p.objects if p.hom(obj, c)}
    pres = presentation(dset.nerve(p))
    index = {g: i for i, g in enumerate(generators)}
    matrix = []
    for x in pres.generators:
        row = [0] * len(generators)
        row[index[classes[nerve_object(x)]]] = 1
        matrix.append(row)
    if not induced_iso_check(GroupHom.of(pres.group, completion, matrix)):
        return f"K0(nerve({p.name})) = {pres.group} but pi0 completes to {completion}"
    return None


def components_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    results = []
    failure = None
    for i in range(bounds.simplicial_samples):
        sset = dset.random_simplicial_set(rng)
        group = k0(dset.i_shriek(sset, f"random-{i}"))
        expected = components_oracle(sset)
        if not _is_free(group, expected):
            failure = f"sample {i}: K0 = {group}, {expected} components"
            break
    results.append(
        _check(
            "K0 of i_!X is free on the components of X",
            failure is None,
            failure or f"{bounds.simplicial_samples} samples",
        )
    )

    corpus = groupoid_corpus(bounds.monoid_order)
    bijective = [p.name for p in corpus if p.is_picard() and not lambda_is_bijective(dset.nerve(p))]
    results.append(
        _check(
            "lambda is a bijection for Picard nerves",
            not bijective,
            f"fails for {bijective[0]}" if bijective else "",
        )
    )
    non_injective = [p.name for p in corpus if not p.is_picard() and not lambda_is_injective(dset.nerve(p))]
    results.append(
        _check(
            "lambda fails injectivity for some non-Picard nerve",
            bool(non_injective),
            f"e.g. {non_injective[0]}" if non_injective else "every non-Picard nerve has injective lambda",
        )
    )
    return results


def completion_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    results = _family(
        "K0 of a nerve is the group completion of pi0",
        ((p.name.split(".")[0], lambda p=p: completion_check(p)) for p in groupoid_corpus(bounds.monoid_order)),
    )

    # vector spaces of dimension <= 4 under direct sum
    dims = [f"d{i}" for i in range(1, 5)]
    field_rel = [([f"d{i}", f"d{j}"], [f"d{i + j}"]) for i in range(1, 5) for j in range(1, 5) if i + j <= 4]
    field_group = group_completion(dims, field_rel)
    results.append(_check("K0 of vector spaces is Z", _is_free(field_group, 1), str(field_group)))

    # modules over F x F: pairs of dimensions
    pairs = [(i, j) for i in range(3) for j in range(3) if (i, j) != (0, 0)]
    names = {pq: f"d{pq[0]}_{pq[1]}" for pq in pairs}
    product_rel = [
        ([names[p], names[q]], [names[(p[0] + q[0], p[1] + q[1])]])
        for p in pairs
        for q in pairs
        if (p[0] + q[0], p[1] + q[1]) in names
    ]
    product_group = group_completion(list(names.values()), product_rel)
    results.append(_check("K0 of modules over F x F is Z^2", _is_free(product_group, 2), str(product_group)))

    # free modules where R^2 = R^3
    collapsed = saturating_monoid(2)
    generators, relations = monoid_table_presentation(collapsed.elements, collapsed.unit, collapsed.table)
    collapsed_group = group_completion(generators, relations)
    nerve_group = k0(dset.nerve(from_commutative_monoid(collapsed, name="collapsed")))
    results.append(
        _check(
            "K0 is trivial when 2 = 2 + 1",
            collapsed_group.is_trivial() and nerve_group.is_trivial(),
            f"completion {collapsed_group}, nerve {nerve_group}",
        )
    )
    return results


# -- pushouts and quotients ----------------------------------------------------


def sample_bases() -> list[DendroidalSet]:
    """Small dendroidal sets that random attachments start from."""
    return [
        dset.terminal(),
        dset.representable(corolla(2)),
        dset.representable(linear(1)),
        dset.horn(cnk(2, 2), "bk"),
        dset.i_shriek(dset.standard_simplex(1), "interval"),
        dset.i_shriek(dset.poset_nerve(["x", "y", "z"], [("x", "y"), ("y", "z"), ("x", "z")]), "chain"),
        dset.nerve(from_commutative_monoid(cyclic_group(2), name="z2")),
        dset.nerve(from_commutative_monoid(max_monoid(2), name="max2")),
        dset.disjoint_union([dset.representable(corolla(1)), dset.terminal()]),
    ]


def attachment_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    shapes = [t for t in enumerate_trees(bounds.max_vertices, bounds.max_arity) if horn_labels(t)]
    bases = sample_bases()
    attached = 0
    attempts = 0
    failure = None
    current: Optional[DendroidalSet] = None
    while attached < bounds.attach_samples and attempts < 20 * bounds.attach_samples:
        attempts += 1
        base = current if current is not None and rng.random() < 0.3 else rng.choice(bases)
        t = rng.choice(shapes)
        label = rng.choice(horn_labels(t))
        maps = horn_maps(base, t, label)
        if not maps:
            continue
        cell = dset.attach_cell(base, t, label, horn_map_dendmap(base, rng.choice(maps)))
        attached += 1
        if not inclusion_is_k0_iso(cell):
            failure = f"{cell.description}: inclusion is not a K0 isomorphism"
            break
        if not attach_colimit_check(cell):
            failure = f"{cell.description}: K0 is not the pushout of K0 groups"
            break
        # keep nesting shallow so later samples stay small
        current = cell if base is not current else None
    logger.info("attached %d cells in %d attempts", attached, attempts)
    return [
        _check(
            "attaching a horn filler leaves K0 unchanged",
            failure is None and attached == bounds.attach_samples,
            failure or f"{attached} attachments",
        )
    ]


def quotient_pairs(rng: random.Random, count: int, max_vertices: int, max_arity: int) -> list[tuple[DendroidalSet, DendroidalSet]]:
    trees = [t for t in enumerate_trees(max_vertices, max_arity) if t.vertices]
    pairs: list[tuple[DendroidalSet, DendroidalSet]] = []
    for _ in range(count):
        t = rng.choice(trees)
        choice = rng.randrange(5)
        if choice == 0:
            sub = dset.boundary(t)
        elif choice == 1:
            sub = dset.horn(t, rng.choice(horn_labels(t)))
        elif choice == 2:
            sub = dset.segal_core(t)
        elif choice == 3:
            sub = dset.face_subobject(t, rng.choice(horn_labels(t)))
        else:
            sub = dset.colour_subobject(t, rng.choice(sorted(t.edges)))
        pairs.append((dset.representable(t), sub))
    return pairs


def colimits_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    results = []
    failure = None
    pairs = quotient_pairs(rng, bounds.quotient_samples, bounds.max_vertices, bounds.max_arity)
    z2 = dset.nerve(from_commutative_monoid(cyclic_group(2), name="z2"))
    for x in z2.dendrices(corolla(2))[:2]:
        pairs.append((z2, Subobject(z2, [(corolla(2), x)], f"sub({x})")))
    for base, sub in pairs:
        q = dset.quotient(base, sub)
        if not quotient_colimit_check(q):
            failure = f"{q.description}: K0 is not the cokernel"
            break
    results.append(
        _check("K0 of a quotient is the cokernel", failure is None, failure or f"{len(pairs)} quotients")
    )

    bases = sample_bases()
    failure = None
    for _ in range(bounds.quotient_samples):
        parts = rng.sample(bases, rng.randint(1, 3))
        u = dset.disjoint_union(parts)
        if not union_colimit_check(u):
            failure = f"{u.description}: K0 is not the direct sum"
            break
    results.append(_check("K0 of a disjoint union is the direct sum", failure is None, failure or ""))
    return results


def empty_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    empty = dset.empty()
    rep = dset.representable(corolla(2))
    results = [
        _check("K0(empty) = 0", k0(empty).is_trivial(), str(k0(empty))),
        _check("K0(point) = 0", k0(dset.terminal()).is_trivial(), str(k0(dset.terminal()))),
        _check("empty is not fully Kan", not check_fully_kan(empty, 1, 1).passed),
    ]
    collapsed = dset.quotient(rep, rep)
    results.append(_check("K0(D/D) = 0", k0(collapsed).is_trivial(), str(k0(collapsed))))
    padded = dset.disjoint_union([rep, empty])
    results.append(_check("D + empty has the K0 of D", union_colimit_check(padded), str(k0(padded))))
    return results


# -- Kan conditions -------------------------------------------------------------


def kan_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    results = []
    for p in groupoid_corpus(bounds.kan_monoid_order or bounds.monoid_order):
        n = dset.nerve(p)
        inner = check_inner_kan(n, bounds.max_vertices, bounds.max_arity)
        full = check_fully_kan(n, bounds.max_vertices, bounds.max_arity)
        results.append(
            _check(
                f"nerve({p.name}) is inner Kan",
                inner.passed,
                "" if inner.passed else str(inner.counterexample),
            )
        )
        results.append(
            _check(
                f"nerve({p.name}) fully Kan iff Picard",
                full.passed == p.is_picard(),
                f"picard={p.is_picard()} fully_kan={full.passed}",
            )
        )
    simplicial = [
        dset.i_shriek(dset.standard_simplex(0), "pt"),
        dset.i_shriek(dset.standard_simplex(1), "interval"),
        dset.i_shriek(dset.random_simplicial_set(rng, 4), "random"),
    ]
    for x in simplicial:
        report = check_fully_kan(x, 1, 2)
        results.append(
            _check(
                f"{x.description} is not fully Kan",
                not report.passed,
                str(report.counterexample) if report.counterexample else "",
            )
        )
    return results


def fibrant_step_suite(rng: random.Random, bounds: SuiteBounds) -> list[CheckResult]:
    bases = [
        dset.i_shriek(dset.standard_simplex(0), "pt"),
        dset.horn(cnk(2, 2), "bk"),
        dset.nerve(from_commutative_monoid(max_monoid(2), name="max2")),
    ]
    results = []
    for base in bases:
        step = fibrant_step(base, bounds.fibrant_vertices, bounds.fibrant_arity)
        results.append(
            _check(
                f"fibrant step on {base.description} keeps K0",
                inclusion_is_k0_iso(step),
                f"{len(step.cells)} cells, K0 = {k0(step)}",
            )
        )
    return results


SUITES: dict[str, Callable[[random.Random, SuiteBounds], list[CheckResult]]] = {
    "representables": representables_suite,
    "segal-core": segal_core_suite,
    "horns": horns_suite,
    "horn-tables": horn_tables_suite,
    "components": components_suite,
    "group-completion": completion_suite,
    "attachment": attachment_suite,
    "colimits": colimits_suite,
    "empty": empty_suite,
    "kan": kan_suite,
    "fibrant-step": fibrant_step_suite,
}


# suites run together under the names the verification checklist uses
GROUPED: dict[str, list[str]] = {
    "example-3-3": ["representables"],
    "lemma-3-4": ["horns", "horn-tables"],
    "prop-3-2": ["components", "group-completion"],
}


def run_suite(name: str, seed: int = 0, bounds: Optional[SuiteBounds] = None) -> VerifyDocument:
    """Run one suite, a grouped name, or every suite for ``all``, with a fresh generator per suite."""
    bounds = bounds or SuiteBounds()
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    elif name in GROUPED:
        names = GROUPED[name]
    else:
        choices = ", ".join([*SUITES, *GROUPED, "all"])
        raise ValueError(f"unknown suite {name!r}; choose from {choices}")
    checks: list[CheckResult] = []
    for suite in names:
        logger.info("running suite %s", suite)
        results = SUITES[suite](random.Random(seed), bounds)
        if len(names) > 1:
            results = [r.model_copy(update={"name": f"{suite}: {r.name}"}) for r in results]
        checks.extend(results)
        failed = sum(1 for r in results if not r.passed)
        logger.info("suite %s: %d checks, %d failed", suite, len(results), failed)
    return VerifyDocument(suite=name, seed=seed, passed=all(c.passed for c in checks), checks=checks)
