"""Exact integer linear algebra: Smith normal form, cokernels and maps between them.

Matrices are lists of rows of Python ints. Vectors are rows and act on the
left, so a presentation with relation matrix R (one row per relation) over n
generators is the group Z^n / (row span of R).
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from sympy import factorint

logger = logging.getLogger(__name__)

Matrix = list[list[int]]


class HomomorphismError(ValueError):
    """Raised when a generator-level matrix does not respect the relations."""


def identity_matrix(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None) -> Matrix:
    """a @ b; ``inner`` gives the shared dimension when ``a`` has no rows or ``b`` no columns."""
    if not a:
        return []
    k = len(b) if inner is None else inner
    cols = len(b[0]) if b else 0
    return [[sum(row[t] * b[t][j] for t in range(k)) for j in range(cols)] for row in a]


def vecmat(v: Sequence[int], m: Matrix, cols: int) -> list[int]:
    return [sum(v[i] * m[i][j] for i in range(len(v))) for j in range(cols)]


def smith_normal_form(m: Matrix, cols: Optional[int] = None) -> tuple[Matrix, Matrix, Matrix]:
    """Return (U, D, V) with U unimodular, V unimodular, U m V = D in Smith form.

    Pivots are chosen by least absolute value. ``cols`` is needed when ``m``
    has no rows.
    """
    rows = len(m)
    cols = len(m[0]) if m else (cols or 0)
    a = [list(r) for r in m]
    u = identity_matrix(rows)
    v = identity_matrix(cols)

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(dst: int, src: int, q: int) -> None:
        a[dst] = [x + q * y for x, y in zip(a[dst], a[src])]
        u[dst] = [x + q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst: int, src: int, q: int) -> None:
        for r in a:
            r[dst] += q * r[src]
        for r in v:
            r[dst] += q * r[src]

    for t in range(min(rows, cols)):
        while True:
            entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
            if not entries:
                break
            _, pi, pj = min(entries)
            swap_rows(t, pi)
            swap_cols(t, pj)
            p = a[t][t]
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
            if any(a[i][t] for i in range(t + 1, rows)) or any(a[t][j] for j in range(t + 1, cols)):
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if t < rows and t < cols and a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]

    if rows and matmul(matmul(u, m, rows), v, cols) != a:
        raise ArithmeticError("Smith normal form failed its U m V = D check")
    return u, a, v


def diagonal(d: Matrix) -> list[int]:
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


@dataclass(frozen=True)
class FgAbelianGroup:
    """Z^n modulo the row span of ``relations``, with its Smith-normal-form invariants."""

    ngens: int
    relations: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...] = field(repr=False)
    transform: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.pivots if d > 1]

    @property
    def free_rank(self) -> int:
        return self.ngens - len(self.pivots)

    @property
    def elementary_divisors(self) -> list[int]:
        out = []
        for d in self.invariant_factors:
            out.extend(p**k for p, k in factorint(d).items())
        return sorted(out)

    def order(self) -> Optional[int]:
        """Number of elements, or None when infinite."""
        if self.free_rank:
            return None
        total = 1
        for d in self.invariant_factors:
            total *= d
        return total

    def is_trivial(self) -> bool:
        return self.order() == 1

    def coordinates(self, x: Sequence[int]) -> tuple[int, ...]:
        """Canonical coordinates of a generator-level vector: torsion parts reduced, then free parts."""
        y = vecmat(x, [list(r) for r in self.transform], self.ngens)
        out = []
        for i, d in enumerate(self.pivots):
            if d > 1:
                out.append(y[i] % d)
        out.extend(y[len(self.pivots):])
        return tuple(out)

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.coordinates(x))

    def generator(self, i: int) -> list[int]:
        return [int(i == j) for j in range(self.ngens)]

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{d}" for d in self.invariant_factors)
        return " + ".join(parts) if parts else "0"


def cokernel(relations: Iterable[Sequence[int]], ngens: int) -> FgAbelianGroup:
    rows = [list(r) for r in relations]
    for r in rows:
        if len(r) != ngens:
            raise ValueError(f"relation row has {len(r)} entries, expected {ngens}")
    _, d, v = smith_normal_form(rows, ngens)
    pivots = tuple(x for x in diagonal(d) if x) if rows else ()
    group = FgAbelianGroup(
        ngens=ngens,
        relations=tuple(tuple(r) for r in rows),
        pivots=pivots,
        transform=tuple(tuple(r) for r in v),
    )
    logger.debug("cokernel of %dx%d relations: %s", len(rows), ngens, group)
    return group


def in_lattice(x: Sequence[int], relations: Sequence[Sequence[int]], ngens: Optional[int] = None) -> bool:
    ngens = len(x) if ngens is None else ngens
    return cokernel(relations, ngens).is_zero(x)


def same_lattice(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], ngens: int) -> bool:
    ga, gb = cokernel(a, ngens), cokernel(b, ngens)
    return all(gb.is_zero(r) for r in a) and all(ga.is_zero(r) for r in b)


def left_kernel(m: Matrix, cols: int) -> Matrix:
    """A basis of {y : y m = 0}."""
    if not m:
        return []
    u, d, _ = smith_normal_form(m, cols)
    rank = sum(1 for x in diagonal(d) if x)
    return [list(r) for r in u[rank:]]


def direct_sum(a: FgAbelianGroup, b: FgAbelianGroup) -> FgAbelianGroup:
    rows = [list(r) + [0] * b.ngens for r in a.relations]
    rows += [[0] * a.ngens + list(r) for r in b.relations]
    return cokernel(rows, a.ngens + b.ngens)


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given on generators: row i is the image of source generator i."""

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.matrix) != self.source.ngens or any(len(r) != self.target.ngens for r in self.matrix):
            raise HomomorphismError(
                f"matrix shape does not match {self.source.ngens} -> {self.target.ngens} generators"
            )
        for rel in self.source.relations:
            image = self(rel)
            if not self.target.is_zero(image):
                raise HomomorphismError(f"relation {list(rel)} maps to {image}, which is nonzero in {self.target}")

    @classmethod
    def of(cls, source: FgAbelianGroup, target: FgAbelianGroup, matrix: Sequence[Sequence[int]]) -> "GroupHom":
        return cls(source, target, tuple(tuple(r) for r in matrix))

    def __call__(self, x: Sequence[int]) -> list[int]:
        return vecmat(x, [list(r) for r in self.matrix], self.target.ngens)


def identity_hom(g: FgAbelianGroup) -> GroupHom:
    return GroupHom.of(g, g, identity_matrix(g.ngens))


def compose_homs(g: GroupHom, f: GroupHom) -> GroupHom:
    """g after f."""
    return GroupHom.of(f.source, g.target, [g(row) for row in f.matrix])


def is_surjective(h: GroupHom) -> bool:
    stacked = [list(r) for r in h.target.relations] + [list(r) for r in h.matrix]
    return cokernel(stacked, h.target.ngens).is_trivial()


def is_injective(h: GroupHom) -> bool:
    n = h.source.ngens
    stacked = [list(r) for r in h.matrix] + [list(r) for r in h.target.relations]
    if not stacked:
        return True
    for y in left_kernel(stacked, h.target.ngens):
        if not h.source.is_zero(y[:n]):
            return False
    return True


def induced_iso_check(h: GroupHom) -> bool:
    """True iff ``h`` induces a bijection of cokernels."""
    return is_surjective(h) and is_injective(h)


def group_completion(generators: Sequence[str], relations: Iterable[tuple[Sequence[str], Sequence[str]]]) -> FgAbelianGroup:
    """The Grothendieck group of the commutative monoid presented by word relations lhs = rhs."""
    index = {g: i for i, g in enumerate(generators)}
    rows = []
    for lhs, rhs in relations:
        row = [0] * len(generators)
        for g, k in Counter(lhs).items():
            row[index[g]] += k
        for g, k in Counter(rhs).items():
            row[index[g]] -= k
        rows.append(row)
    return cokernel(rows, len(generators))


def monoid_table_presentation(
    elements: Sequence[str], unit: str, table: Mapping[tuple[str, str], str]
) -> tuple[list[str], list[tuple[list[str], list[str]]]]:
    """Generators = elements; relations a + b = a*b and unit = 0."""
    relations: list[tuple[list[str], list[str]]] = [([unit], [])]
    for a in elements:
        for b in elements:
            relations.append(([a, b], [table[(a, b)]]))
    return list(elements), relations
