"""Finite permutative (strict symmetric monoidal) groupoids given by tables."""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import TYPE_CHECKING, Mapping, Optional, Sequence

import networkx as nx

if TYPE_CHECKING:
    from .models import GroupoidTable

logger = logging.getLogger(__name__)


class GroupoidError(ValueError):
    """Raised when a table violates the monoid or permutative groupoid axioms."""


@dataclass(frozen=True)
class FiniteMonoid:
    """A finite commutative monoid as a multiplication table."""

    elements: tuple[str, ...]
    unit: str
    table: Mapping[tuple[str, str], str]

    def __hash__(self) -> int:
        return hash((self.elements, self.unit, tuple(sorted(self.table.items()))))

    def __call__(self, a: str, b: str) -> str:
        return self.table[(a, b)]

    def validate(self, require_commutative: bool = True) -> Optional[str]:
        elems = set(self.elements)
        if self.unit not in elems:
            return f"unit {self.unit!r} is not an element"
        for a, b in itertools.product(self.elements, repeat=2):
            c = self.table.get((a, b))
            if c is None:
                return f"table is not total: {a} * {b} missing"
            if c not in elems:
                return f"{a} * {b} = {c!r} is not an element"
        for a in self.elements:
            if self(self.unit, a) != a or self(a, self.unit) != a:
                return f"{self.unit!r} is not a unit for {a!r}"
        if require_commutative:
            for a, b in itertools.combinations(self.elements, 2):
                if self(a, b) != self(b, a):
                    return f"not commutative: {a} * {b} != {b} * {a}"
        for a, b, c in itertools.product(self.elements, repeat=3):
            if self(self(a, b), c) != self(a, self(b, c)):
                return f"not associative at ({a}, {b}, {c})"
        return None

    def inverse(self, a: str) -> Optional[str]:
        for b in self.elements:
            if self(a, b) == self.unit:
                return b
        return None

    def is_group(self) -> bool:
        return all(self.inverse(a) is not None for a in self.elements)


@dataclass(frozen=True, eq=False)
class PermutativeGroupoid:
    """Strictly associative and unital symmetric monoidal groupoid.

    Objects and morphisms are named by strings. ``composition[(g, f)]`` is
    g after f. ``symmetry[(a, b)]`` is tau_{a,b} : a*b -> b*a.
    """

    objects: tuple[str, ...]
    unit: str
    tensor: Mapping[tuple[str, str], str]
    morphisms: Mapping[str, tuple[str, str]]
    composition: Mapping[tuple[str, str], str]
    identities: Mapping[str, str]
    tensor_morphisms: Mapping[tuple[str, str], str]
    symmetry: Mapping[tuple[str, str], str]
    name: str = "groupoid"

    @cached_property
    def _hom(self) -> dict[tuple[str, str], list[str]]:
        table: dict[tuple[str, str], list[str]] = {}
        for f, ends in sorted(self.morphisms.items()):
            table.setdefault(ends, []).append(f)
        return table

    def hom(self, a: str, b: str) -> list[str]:
        return self._hom.get((a, b), [])

    def src(self, f: str) -> str:
        return self.morphisms[f][0]

    def dst(self, f: str) -> str:
        return self.morphisms[f][1]

    def compose(self, g: str, f: str) -> str:
        """g after f."""
        return self.composition[(g, f)]

    def tensor_objects(self, objs: Sequence[str]) -> str:
        return reduce(lambda a, b: self.tensor[(a, b)], objs, self.unit)

    def tensor_maps(self, maps: Sequence[str]) -> str:
        return reduce(lambda f, g: self.tensor_morphisms[(f, g)], maps, self.identities[self.unit])

    def operations(self, inputs: Sequence[str], output: str) -> list[str]:
        """hom(c1 * ... * cn, c); the empty tensor is the unit."""
        return self.hom(self.tensor_objects(inputs), output)

    def inverse(self, f: str) -> str:
        a, b = self.morphisms[f]
        for g in self.hom(b, a):
            if self.compose(g, f) == self.identities[a] and self.compose(f, g) == self.identities[b]:
                return g
        raise GroupoidError(f"morphism {f!r} has no inverse")

    def reorder(self, objs: Sequence[str], order: Sequence[int]) -> str:
        """The symmetry iso from the tensor of ``objs`` to the tensor of ``objs`` permuted by ``order``.

        ``order[j]`` is the position in ``objs`` of the j-th factor of the
        target. Built from adjacent transpositions id * tau * id.
        """
        current = list(range(len(objs)))
        result = self.identities[self.tensor_objects(objs)]
        rank = {p: j for j, p in enumerate(order)}
        swapped = True
        while swapped:
            swapped = False
            for i in range(len(current) - 1):
                if rank[current[i]] > rank[current[i + 1]]:
                    x, y = objs[current[i]], objs[current[i + 1]]
                    prefix = [objs[p] for p in current[:i]]
                    suffix = [objs[p] for p in current[i + 2:]]
                    step = self.tensor_maps([
                        self.identities[self.tensor_objects(prefix)],
                        self.symmetry[(x, y)],
                        self.identities[self.tensor_objects(suffix)],
                    ])
                    result = self.compose(step, result)
                    current[i], current[i + 1] = current[i + 1], current[i]
                    swapped = True
        return result

    def validate(self) -> Optional[str]:
        """None when every permutative groupoid axiom holds, else the first violation."""
        objs = set(self.objects)
        mors = sorted(self.morphisms)
        if self.unit not in objs:
            return f"unit {self.unit!r} is not an object"
        for a, b in itertools.product(self.objects, repeat=2):
            c = self.tensor.get((a, b))
            if c is None:
                return f"object tensor is not total: {a} * {b} missing"
            if c not in objs:
                return f"{a} * {b} = {c!r} is not an object"
        for f, (a, b) in self.morphisms.items():
            if a not in objs or b not in objs:
                return f"morphism {f!r} has an endpoint that is not an object"
        for a in self.objects:
            ident = self.identities.get(a)
            if ident is None or self.morphisms.get(ident) != (a, a):
                return f"object {a!r} has no identity"

        # category and groupoid
        for f, g in itertools.product(mors, repeat=2):
            if self.dst(f) != self.src(g):
                continue
            h = self.composition.get((g, f))
            if h is None:
                return f"composition is not total: {g} o {f} missing"
            if self.morphisms.get(h) != (self.src(f), self.dst(g)):
                return f"{g} o {f} = {h!r} has the wrong source or target"
        for f in mors:
            a, b = self.morphisms[f]
            if self.compose(f, self.identities[a]) != f or self.compose(self.identities[b], f) != f:
                return f"identity law fails for {f!r}"
            try:
                self.inverse(f)
            except GroupoidError as e:
                return str(e)
        for f, g, h in itertools.product(mors, repeat=3):
            if self.dst(f) == self.src(g) and self.dst(g) == self.src(h):
                if self.compose(h, self.compose(g, f)) != self.compose(self.compose(h, g), f):
                    return f"composition is not associative at ({h}, {g}, {f})"

        # strict monoidal structure
        for a in self.objects:
            if self.tensor[(self.unit, a)] != a or self.tensor[(a, self.unit)] != a:
                return f"unit is not strict for {a!r}"
        for a, b, c in itertools.product(self.objects, repeat=3):
            if self.tensor[(self.tensor[(a, b)], c)] != self.tensor[(a, self.tensor[(b, c)])]:
                return f"object tensor is not associative at ({a}, {b}, {c})"
        for f, g in itertools.product(mors, repeat=2):
            h = self.tensor_morphisms.get((f, g))
            if h is None:
                return f"morphism tensor is not total: {f} * {g} missing"
            ends = (self.tensor[(self.src(f), self.src(g))], self.tensor[(self.dst(f), self.dst(g))])
            if self.morphisms.get(h) != ends:
                return f"{f} * {g} = {h!r} has the wrong source or target"
        unit_id = self.identities[self.unit]
        for f in mors:
            if self.tensor_morphisms[(unit_id, f)] != f or self.tensor_morphisms[(f, unit_id)] != f:
                return f"identity of the unit is not a strict unit for {f!r}"
        for a, b in itertools.product(self.objects, repeat=2):
            if self.tensor_morphisms[(self.identities[a], self.identities[b])] != self.identities[self.tensor[(a, b)]]:
                return f"id_{a} * id_{b} is not an identity"
        for f, g, h in itertools.product(mors, repeat=3):
            left = self.tensor_morphisms[(self.tensor_morphisms[(f, g)], h)]
            if left != self.tensor_morphisms[(f, self.tensor_morphisms[(g, h)])]:
                return f"morphism tensor is not associative at ({f}, {g}, {h})"
        for f, f2, g, g2 in itertools.product(mors, repeat=4):
            if self.dst(f) != self.src(f2) or self.dst(g) != self.src(g2):
                continue
            lhs = self.tensor_morphisms[(self.compose(f2, f), self.compose(g2, g))]
            rhs = self.compose(self.tensor_morphisms[(f2, g2)], self.tensor_morphisms[(f, g)])
            if lhs != rhs:
                return f"interchange law fails for ({f2} o {f}) * ({g2} o {g})"

        # symmetry
        for a, b in itertools.product(self.objects, repeat=2):
            tau = self.symmetry.get((a, b))
            if tau is None:
                return f"symmetry is not total: tau_({a},{b}) missing"
            if self.morphisms.get(tau) != (self.tensor[(a, b)], self.tensor[(b, a)]):
                return f"tau_({a},{b}) = {tau!r} has the wrong source or target"
        for a, b in itertools.product(self.objects, repeat=2):
            if self.compose(self.symmetry[(b, a)], self.symmetry[(a, b)]) != self.identities[self.tensor[(a, b)]]:
                return f"tau_({b},{a}) o tau_({a},{b}) is not the identity"
        for a in self.objects:
            if self.symmetry[(a, self.unit)] != self.identities[a]:
                return f"tau_({a},unit) is not the identity"
        for f, g in itertools.product(mors, repeat=2):
            (a, a2), (b, b2) = self.morphisms[f], self.morphisms[g]
            lhs = self.compose(self.symmetry[(a2, b2)], self.tensor_morphisms[(f, g)])
            rhs = self.compose(self.tensor_morphisms[(g, f)], self.symmetry[(a, b)])
            if lhs != rhs:
                return f"tau is not natural for ({f}, {g})"
        for a, b, c in itertools.product(self.objects, repeat=3):
            lhs = self.symmetry[(a, self.tensor[(b, c)])]
            first = self.tensor_morphisms[(self.symmetry[(a, b)], self.identities[c])]
            second = self.tensor_morphisms[(self.identities[b], self.symmetry[(a, c)])]
            if lhs != self.compose(second, first):
                return f"hexagon fails at ({a}, {b}, {c})"
        return None

    def pi0_monoid(self) -> FiniteMonoid:
        """Isomorphism classes, each named by its least object, under the induced tensor."""
        graph = nx.Graph()
        graph.add_nodes_from(self.objects)
        graph.add_edges_from(self.morphisms.values())
        cls = {}
        for component in nx.connected_components(graph):
            rep = min(component)
            for obj in component:
                cls[obj] = rep
        classes = tuple(sorted(set(cls.values())))
        table: dict[tuple[str, str], str] = {}
        for a, b in itertools.product(self.objects, repeat=2):
            key = (cls[a], cls[b])
            value = cls[self.tensor[(a, b)]]
            if table.setdefault(key, value) != value:
                raise GroupoidError(f"tensor is not well defined on classes at {key}")
        logger.debug("pi0 of %s has %d classes", self.name, len(classes))
        return FiniteMonoid(classes, cls[self.unit], table)

    def is_picard(self) -> bool:
        return self.pi0_monoid().is_group()


def from_commutative_monoid(monoid: FiniteMonoid, name: str = "discrete") -> PermutativeGroupoid:
    """The discrete permutative groupoid of a commutative monoid; tau is the identity."""
    problem = monoid.validate()
    if problem is not None:
        raise GroupoidError(f"not a commutative monoid: {problem}")
    ids = {a: f"id{a}" for a in monoid.elements}
    return PermutativeGroupoid(
        objects=monoid.elements,
        unit=monoid.unit,
        tensor=dict(monoid.table),
        morphisms={ids[a]: (a, a) for a in monoid.elements},
        composition={(ids[a], ids[a]): ids[a] for a in monoid.elements},
        identities=ids,
        tensor_morphisms={(ids[a], ids[b]): ids[monoid(a, b)] for a, b in itertools.product(monoid.elements, repeat=2)},
        symmetry={(a, b): ids[monoid(a, b)] for a, b in itertools.product(monoid.elements, repeat=2)},
        name=name,
    )


def from_abelian_group(group: FiniteMonoid, name: str = "discrete") -> PermutativeGroupoid:
    if not group.is_group():
        raise GroupoidError("not an abelian group: some element has no inverse")
    return from_commutative_monoid(group, name)


def cyclic_group(n: int) -> FiniteMonoid:
    elements = tuple(str(i) for i in range(n))
    return FiniteMonoid(elements, "0", {(str(a), str(b)): str((a + b) % n) for a in range(n) for b in range(n)})


def saturating_monoid(cap: int) -> FiniteMonoid:
    """{0..cap} with a * b = min(a + b, cap)."""
    elements = tuple(str(i) for i in range(cap + 1))
    return FiniteMonoid(
        elements, "0", {(str(a), str(b)): str(min(a + b, cap)) for a in range(cap + 1) for b in range(cap + 1)}
    )


def max_monoid(order: int) -> FiniteMonoid:
    """{0..order-1} under max."""
    elements = tuple(str(i) for i in range(order))
    return FiniteMonoid(elements, "0", {(str(a), str(b)): str(max(a, b)) for a in range(order) for b in range(order)})


def enumerate_commutative_monoids(order: int) -> list[FiniteMonoid]:
    """One commutative monoid per isomorphism class on elements 0..order-1 with unit 0."""
    if order < 1:
        return []
    n = order
    cells = [(a, b) for a in range(1, n) for b in range(a, n)]
    table: dict[tuple[int, int], int] = {}
    for a in range(n):
        table[(0, a)] = table[(a, 0)] = a
    found: dict[tuple[int, ...], FiniteMonoid] = {}

    def consistent() -> bool:
        for x, y, z in itertools.product(range(n), repeat=3):
            xy, yz = table.get((x, y)), table.get((y, z))
            if xy is None or yz is None:
                continue
            left, right = table.get((xy, z)), table.get((x, yz))
            if left is not None and right is not None and left != right:
                return False
        return True

    def canonical() -> tuple[int, ...]:
        best = None
        for perm in itertools.permutations(range(1, n)):
            relabel = {0: 0, **{old: new for old, new in zip(range(1, n), perm)}}
            inv = {v: k for k, v in relabel.items()}
            code = tuple(relabel[table[(inv[a], inv[b])]] for a in range(n) for b in range(n))
            if best is None or code < best:
                best = code
        return best

    def fill(idx: int) -> None:
        if idx == len(cells):
            code = canonical()
            if code not in found:
                elements = tuple(str(i) for i in range(n))
                found[code] = FiniteMonoid(
                    elements, "0", {(str(a), str(b)): str(code[a * n + b]) for a in range(n) for b in range(n)}
                )
            return
        a, b = cells[idx]
        for value in range(n):
            table[(a, b)] = table[(b, a)] = value
            if consistent():
                fill(idx + 1)
        del table[(a, b)]
        table.pop((b, a), None)

    fill(0)
    logger.info("found %d commutative monoids of order %d", len(found), order)
    return [found[code] for code in sorted(found)]


def picard_sign_example() -> PermutativeGroupoid:
    """Objects Z/2, every automorphism group Z/2, tau_{1,1} the nontrivial automorphism."""
    objects = ("0", "1")
    mor = lambda obj, bit: f"{'s' if bit else 'id'}{obj}"  # noqa: E731
    morphisms = {mor(a, s): (str(a), str(a)) for a in range(2) for s in range(2)}
    composition = {(mor(a, s), mor(a, t)): mor(a, s ^ t) for a in range(2) for s in range(2) for t in range(2)}
    tensor_morphisms = {
        (mor(a, s), mor(b, t)): mor(a ^ b, s ^ t)
        for a in range(2) for b in range(2) for s in range(2) for t in range(2)
    }
    return PermutativeGroupoid(
        objects=objects,
        unit="0",
        tensor={(str(a), str(b)): str(a ^ b) for a in range(2) for b in range(2)},
        morphisms=morphisms,
        composition=composition,
        identities={str(a): mor(a, 0) for a in range(2)},
        tensor_morphisms=tensor_morphisms,
        symmetry={(str(a), str(b)): mor(a ^ b, a & b) for a in range(2) for b in range(2)},
        name="picard-sign",
    )


def absorbing_clone_example() -> PermutativeGroupoid:
    """Objects {0, x, x'} where x' is an isomorphic copy of x and every non-unit product is x."""
    objects = ("0", "x", "x'")
    tensor = {}
    for a, b in itertools.product(objects, repeat=2):
        tensor[(a, b)] = b if a == "0" else a if b == "0" else "x"
    morphisms = {"id0": ("0", "0"), "idx": ("x", "x"), "idx'": ("x'", "x'"), "phi": ("x'", "x"), "psi": ("x", "x'")}
    composition = {
        ("id0", "id0"): "id0",
        ("idx", "idx"): "idx",
        ("idx'", "idx'"): "idx'",
        ("phi", "idx'"): "phi",
        ("idx", "phi"): "phi",
        ("psi", "idx"): "psi",
        ("idx'", "psi"): "psi",
        ("phi", "psi"): "idx",
        ("psi", "phi"): "idx'",
    }
    tensor_morphisms = {}
    for f, g in itertools.product(morphisms, repeat=2):
        tensor_morphisms[(f, g)] = g if f == "id0" else f if g == "id0" else "idx"
    identities = {"0": "id0", "x": "idx", "x'": "idx'"}
    return PermutativeGroupoid(
        objects=objects,
        unit="0",
        tensor=tensor,
        morphisms=morphisms,
        composition=composition,
        identities=identities,
        tensor_morphisms=tensor_morphisms,
        symmetry={(a, b): identities[tensor[(a, b)]] for a, b in itertools.product(objects, repeat=2)},
        name="absorbing-clone",
    )


def groupoid_corpus(max_order: int = 3) -> list[PermutativeGroupoid]:
    """Discrete groupoids of all commutative monoids up to ``max_order`` plus the two non-discrete examples."""
    corpus = []
    for order in range(1, max_order + 1):
        for i, monoid in enumerate(enumerate_commutative_monoids(order)):
            corpus.append(from_commutative_monoid(monoid, name=f"monoid-{order}.{i}"))
    corpus.append(picard_sign_example())
    corpus.append(absorbing_clone_example())
    return corpus


def groupoid_from_document(doc: "GroupoidTable") -> PermutativeGroupoid:
    """Build and validate a groupoid from a parsed table file."""
    tensor = {(a, b): c for a, b, c in doc.tensor}
    if doc.discrete:
        return from_commutative_monoid(FiniteMonoid(tuple(doc.objects), doc.unit, tensor), name=doc.name)
    p = PermutativeGroupoid(
        objects=tuple(doc.objects),
        unit=doc.unit,
        tensor=tensor,
        morphisms={f: (a, b) for f, a, b in doc.morphisms},
        composition={(g, f): h for g, f, h in doc.composition},
        identities=dict(doc.identities),
        tensor_morphisms={(f, g): h for f, g, h in doc.tensor_morphisms},
        symmetry={(a, b): tau for a, b, tau in doc.symmetry},
        name=doc.name,
    )
    problem = p.validate()
    if problem is not None:
        raise GroupoidError(f"{doc.name}: {problem}")
    return p
