"""Recursive-descent parser for the tree grammar and the construction expression language.

Trees::

    edge     := NAME | NAME '[' edgelist ']' | 'C(' INT [',' INT] ')' | 'L(' INT ')'
    edgelist := empty | edge (',' edge)*

Expressions::

    repr(TREE)  horn(TREE, LABEL)  boundary(TREE)  core(TREE)  face(TREE, LABEL)
    edge(TREE, EDGE)  eta  empty  terminal  union(E, ...)  simplicial(FILE)
    nerve(FILE)  attach(E, TREE, LABEL, MAPFILE)  quotient(E, SUB)
"""
from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Callable, Optional

from .tree import NAME_RE, Tree, TreeError, Vertex, cnk, corolla, linear

logger = logging.getLogger(__name__)

LABEL_RE = re.compile(r"@?[A-Za-z0-9_]+")
INT_RE = re.compile(r"[0-9]+")
PATH_RE = re.compile(r"[^,()\s]+")


class ParseError(ValueError):
    """Raised for malformed tree or expression text; ``position`` is the 0-based offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Parser:
    def __init__(self, text: str, base_dir: Optional[Path] = None):
        self.text = text
        self.pos = 0
        self.base_dir = base_dir or Path.cwd()

    # -- lexing ---------------------------------------------------------------

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self._skip()
        return self.text[self.pos:self.pos + 1]

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise ParseError(f"expected {ch!r}, found {found!r}", self.pos)
        self.pos += 1

    def _token(self, pattern: re.Pattern, what: str) -> str:
        self._skip()
        match = pattern.match(self.text, self.pos)
        if match is None:
            raise ParseError(f"expected {what}", self.pos)
        self.pos = match.end()
        return match.group()

    def name(self) -> str:
        return self._token(NAME_RE, "a name")

    def label(self) -> str:
        return self._token(LABEL_RE, "a face label")

    def integer(self) -> int:
        return int(self._token(INT_RE, "an integer"))

    def path(self) -> Path:
        p = Path(self._token(PATH_RE, "a file path"))
        return p if p.is_absolute() else self.base_dir / p

    def expect_end(self) -> None:
        if self.peek():
            raise ParseError(f"unexpected {self.peek()!r}", self.pos)

    # -- trees ----------------------------------------------------------------

    def tree(self) -> Tree:
        start = self._mark()
        name = self.name()
        if self.peek() == "(" and name in ("C", "L"):
            return self._shorthand(name, start)
        vertices: list[Vertex] = []
        seen: set[str] = set()
        root = self._edge(name, start, vertices, seen)
        try:
            return Tree.build(root, vertices, [root])
        except TreeError as e:
            raise ParseError(str(e), start) from None

    def _mark(self) -> int:
        self._skip()
        return self.pos

    def _edge(self, name: str, start: int, vertices: list[Vertex], seen: set[str]) -> str:
        if name in seen:
            raise ParseError(f"edge name {name!r} is used twice", start)
        seen.add(name)
        if self.peek() != "[":
            return name
        self.expect("[")
        inputs: list[str] = []
        if self.peek() != "]":
            while True:
                child_start = self._mark()
                inputs.append(self._edge(self.name(), child_start, vertices, seen))
                if self.peek() != ",":
                    break
                self.expect(",")
        self.expect("]")
        vertices.append(Vertex(name, tuple(inputs)))
        return name

    def _shorthand(self, name: str, start: int) -> Tree:
        self.expect("(")
        n = self.integer()
        k = None
        if name == "C" and self.peek() == ",":
            self.expect(",")
            k = self.integer()
        self.expect(")")
        try:
            if name == "L":
                return linear(n)
            return corolla(n) if k is None else cnk(n, k)
        except TreeError as e:
            raise ParseError(str(e), start) from None

    # -- expressions ----------------------------------------------------------

    def expression(self):
        from . import dset
        from .kan import horn_map_dendmap, horn_maps
        from .models import GroupoidTable, HornMapChoice, SimplicialListing, load_document
        from .smc import groupoid_from_document

        start = self._mark()
        head = self.name()
        if head in ("eta", "empty", "terminal"):
            if head == "eta":
                from .tree import eta

                return dset.representable(eta())
            return dset.empty() if head == "empty" else dset.terminal()

        self.expect("(")
        tree_forms: dict[str, Callable[[Tree], object]] = {
            "repr": dset.representable,
            "boundary": dset.boundary,
            "core": dset.segal_core,
        }
        if head in tree_forms:
            result = tree_forms[head](self.tree())
        elif head in ("horn", "face", "edge"):
            t = self.tree()
            self.expect(",")
            arg = self.label()
            builder = {"horn": dset.horn, "face": dset.face_subobject, "edge": dset.colour_subobject}[head]
            try:
                result = builder(t, arg)
            except TreeError as e:
                raise ParseError(str(e), start) from None
        elif head == "union":
            parts = [self.expression()]
            while self.peek() == ",":
                self.expect(",")
                parts.append(self.expression())
            result = dset.disjoint_union(parts)
        elif head == "simplicial":
            doc = load_document(self.path(), SimplicialListing)
            result = dset.i_shriek(dset.simplicial.sset_from_document(doc), doc.name)
        elif head == "nerve":
            result = dset.nerve(groupoid_from_document(load_document(self.path(), GroupoidTable)))
        elif head == "attach":
            base = self.expression()
            self.expect(",")
            t = self.tree()
            self.expect(",")
            label_start = self._mark()
            label = self.label()
            self.expect(",")
            choice = load_document(self.path(), HornMapChoice)
            try:
                maps = horn_maps(base, t, label)
            except TreeError as e:
                raise ParseError(str(e), label_start) from None
            if choice.horn_map >= len(maps):
                raise ParseError(f"horn map {choice.horn_map} requested but only {len(maps)} exist", start)
            result = dset.attach_cell(base, t, label, horn_map_dendmap(base, maps[choice.horn_map]))
        elif head == "quotient":
            base = self.expression()
            self.expect(",")
            result = dset.quotient(base, self.expression())
        else:
            raise ParseError(f"unknown construction {head!r}", start)
        self.expect(")")
        return result


def parse_expression(text: str, base_dir: Optional[Path] = None):
    """Parse a whole construction expression into a dendroidal set."""
    parser = Parser(text, base_dir)
    result = parser.expression()
    parser.expect_end()
    logger.debug("parsed %r as %s", text, result.description)
    return result
