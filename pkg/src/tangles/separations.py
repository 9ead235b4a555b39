"""Oriented finite-order separations in canonical form.

A separation is stored as its finite separator X together with an
assignment of every component of (graph minus X) to one of the two
sides; the B side is the selected sub-collection.  For any separation
{A, B} of finite order, every component of the graph minus the separator
lies wholly on one side, so this catalogue is exhaustive, and equality of
canonical forms decides equality of separations.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations

from .components import ComponentSelection, components
from .schema import SchemaGraph, Vertex, parse_vertex, vertex_sort_key, vertex_text
from .symsets import SymVertexSet


class NotRepresentable(ValueError):
    """A requested separation or side split falls outside the canonical catalogue."""


@dataclass(frozen=True)
class OrientedSeparation:
    schema: SchemaGraph = field(compare=False, repr=False)
    X: frozenset[Vertex]
    toB: ComponentSelection

    # -- sides -------------------------------------------------------------

    @cached_property
    def separator_set(self) -> SymVertexSet:
        return SymVertexSet.of(self.schema, self.X)

    @cached_property
    def side_B(self) -> SymVertexSet:
        return self.separator_set | self.toB.union_vertices()

    @cached_property
    def side_A(self) -> SymVertexSet:
        return self.separator_set | self.toB.complement().union_vertices()

    @property
    def order(self) -> int:
        return len(self.X)

    # -- algebra -------------------------------------------------------------

    def inverse(self) -> "OrientedSeparation":
        return OrientedSeparation(self.schema, self.X, self.toB.complement())

    def leq(self, other: "OrientedSeparation") -> bool:
        """(A,B) <= (C,D) iff A is contained in C and B contains D."""
        if self.schema is not other.schema:
            raise ValueError("separations over different graphs")
        return self.side_A.issubset(other.side_A) and other.side_B.issubset(self.side_B)

    def lt(self, other: "OrientedSeparation") -> bool:
        return self != other and self.leq(other)

    @property
    def is_small(self) -> bool:
        """Whether the separation points at everything: B = V."""
        return self.toB.is_all

    def corner_join(self, other: "OrientedSeparation") -> "OrientedSeparation":
        """(A u A', B n B'), canonicalised; order <= order(s)+order(t)."""
        if self.schema is not other.schema:
            raise ValueError("separations over different graphs")
        return from_vertex_sides(
            self.schema, self.side_A | other.side_A, self.side_B & other.side_B
        )

    def restrict(self, Z) -> tuple[frozenset[Vertex], frozenset[Vertex]]:
        """Induced separation (A n Z, B n Z) of the finite induced subgraph."""
        Z = self.schema.check_vertices(Z)
        return (
            frozenset(v for v in Z if v in self.side_A),
            frozenset(v for v in Z if v in self.side_B),
        )

    def flip_finite(self, moved: ComponentSelection) -> "OrientedSeparation":
        """Move a finite sub-collection of components to the other side."""
        if not moved.count_is_finite or not moved.union_vertices().is_finite:
            raise ValueError("can only flip finitely many finite components")
        return OrientedSeparation(
            self.schema, self.X, (self.toB - moved) | (moved - self.toB)
        )

    # -- text ----------------------------------------------------------------

    def text(self) -> str:
        xs = ",".join(vertex_text(v) for v in sorted(self.X, key=vertex_sort_key))
        return f"sep X={{{xs}}} B={self.toB.text()}"

    def __repr__(self) -> str:
        return f"OrientedSeparation({self.text()})"


def from_bipartition(schema: SchemaGraph, X, toB: ComponentSelection) -> OrientedSeparation:
    X = schema.check_vertices(X)
    cs = components(schema, X)
    if toB.cs is not cs and toB.cs != cs:
        raise ValueError("selection does not match components of X")
    return OrientedSeparation(schema, X, toB)


def from_vertex_sides(
    schema: SchemaGraph, A: SymVertexSet, B: SymVertexSet
) -> OrientedSeparation:
    """Canonicalise an (A, B) pair into separator-plus-sides form."""
    if not (A | B).complement().is_empty:
        raise NotRepresentable("sides do not cover the vertex set")
    xset = A & B
    if not xset.is_finite:
        raise NotRepresentable("separator is infinite")
    X = frozenset(xset.to_explicit())
    cs = components(schema, X)
    try:
        toB = cs.partition_by(B)
    except ValueError as exc:
        raise NotRepresentable(str(exc)) from exc
    # every component must land on one side entirely
    rest = cs.select_all() - toB - cs.partition_by(A)
    if not rest.is_empty:
        raise NotRepresentable("a component escapes both sides")
    return OrientedSeparation(schema, X, toB)


def separation_of_finite(schema: SchemaGraph, A, B) -> OrientedSeparation:
    """Convenience for explicit vertex collections."""
    return from_vertex_sides(
        schema, SymVertexSet.of(schema, A), SymVertexSet.of(schema, B)
    )


# -- stars and consistency ----------------------------------------------------


def is_star(seps) -> bool:
    """Whether all members pairwise point towards each other."""
    seps = list(seps)
    for s, t in combinations(seps, 2):
        if not (s.leq(t.inverse()) and t.leq(s.inverse())):
            return False
    return True


def is_consistent(seps) -> bool:
    """No two members point away from each other.

    Two distinct oriented members u, w conflict when inverse(u) lies
    below w; on full orientations this coincides with the strict reading,
    and on arbitrary sets it rejects pairs like {(V, A), (A, V)}.
    """
    seps = list(seps)
    for s in seps:
        for t in seps:
            if s != t and s.inverse().leq(t):
                return False
    return True


# -- text round-trip ----------------------------------------------------------

_SEP_RE = re.compile(r"^sep X=\{(.*?)\} B=(\{.*\})$")


def parse_separation(schema: SchemaGraph, text: str) -> OrientedSeparation:
    m = _SEP_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad separation text {text!r}")
    xs_body, sel_body = m.group(1), m.group(2)
    X = frozenset(
        parse_vertex(schema, t.strip()) for t in xs_body.split(",") if t.strip()
    )
    cs = components(schema, X)
    toB = ComponentSelection.parse(cs, sel_body)
    return OrientedSeparation(schema, X, toB)
