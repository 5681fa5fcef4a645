"""Formal contexts, derivation operators and the top of the concept lattice.

Incidence is kept twice, as one integer bitset per object (its row) and one
per attribute (its column), so that both derivation operators are a single
AND-reduction over the relevant bitsets.
"""
from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Iterable, Sequence


def _bits(mask: int) -> frozenset[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return frozenset(out)


@dataclass(frozen=True)
class FormalConcept:
    """A closed pair (extent, intent) of a formal context."""

    extent: frozenset[int]
    intent: frozenset[int]

    def __le__(self, other: "FormalConcept") -> bool:
        return self.extent <= other.extent

    def __lt__(self, other: "FormalConcept") -> bool:
        return self.extent < other.extent


@dataclass(frozen=True)
class FormalContext:
    """Binary incidence between objects ``0..n-1`` and attributes ``0..m-1``.

    Build instances with :meth:`from_matrix` or :meth:`from_pairs`; the
    object is immutable afterwards.
    """

    rows: tuple[int, ...]
    n_attributes: int
    object_names: tuple[str, ...] = ()
    attribute_names: tuple[str, ...] = ()
    name: str = ""
    cols: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n, m = len(self.rows), self.n_attributes
        if m < 0:
            raise ValueError("n_attributes must be non-negative")
        full = (1 << m) - 1
        for g, row in enumerate(self.rows):
            if row < 0 or row & ~full:
                raise ValueError(f"row {g} references an attribute outside 0..{m - 1}")
        if not self.object_names:
            object.__setattr__(self, "object_names", tuple(str(g) for g in range(n)))
        if not self.attribute_names:
            object.__setattr__(self, "attribute_names", tuple(str(a) for a in range(m)))
        if len(self.object_names) != n or len(self.attribute_names) != m:
            raise ValueError("name lists must match the context dimensions")
        cols = [0] * m
        for g, row in enumerate(self.rows):
            for a in _bits(row):
                cols[a] |= 1 << g
        object.__setattr__(self, "cols", tuple(cols))

    @classmethod
    def from_matrix(cls, matrix, object_names: Sequence[str] = (),
                    attribute_names: Sequence[str] = (), name: str = "") -> "FormalContext":
        """Build from any 2-D boolean-like table (list of lists or ndarray)."""
        table = [list(r) for r in matrix]
        widths = {len(r) for r in table}
        if len(widths) > 1:
            raise ValueError("ragged incidence matrix")
        m = widths.pop() if widths else len(attribute_names)
        rows = tuple(sum(1 << a for a, v in enumerate(r) if v) for r in table)
        return cls(rows, m, tuple(object_names), tuple(attribute_names), name)

    @classmethod
    def from_pairs(cls, n_objects: int, n_attributes: int,
                   pairs: Iterable[tuple[int, int]], **names) -> "FormalContext":
        rows = [0] * n_objects
        for g, a in pairs:
            if not (0 <= g < n_objects and 0 <= a < n_attributes):
                raise ValueError(f"incidence pair {(g, a)} out of range")
            rows[g] |= 1 << a
        return cls(tuple(rows), n_attributes, **names)

    @property
    def n_objects(self) -> int:
        return len(self.rows)

    @property
    def objects(self) -> range:
        return range(self.n_objects)

    @property
    def attributes(self) -> range:
        return range(self.n_attributes)

    @property
    def incidence(self) -> frozenset[tuple[int, int]]:
        return frozenset((g, a) for g, row in enumerate(self.rows) for a in _bits(row))

    def has(self, g: int, a: int) -> bool:
        return bool(self.rows[g] >> a & 1)

    def to_matrix(self) -> list[list[bool]]:
        return [[self.has(g, a) for a in self.attributes] for g in self.objects]

    def with_cell(self, g: int, a: int, value: bool) -> "FormalContext":
        """Copy of this context with one incidence cell set or cleared."""
        rows = list(self.rows)
        rows[g] = rows[g] | (1 << a) if value else rows[g] & ~(1 << a)
        return FormalContext(tuple(rows), self.n_attributes, self.object_names,
                             self.attribute_names, self.name)

    # mask-level helpers, used by the public operators below
    def _object_mask(self, objs: Iterable[int]) -> int:
        mask = 0
        for g in objs:
            try:
                g = operator.index(g)
            except TypeError:
                raise ValueError(f"unknown object id {g!r}") from None
            if not 0 <= g < self.n_objects:
                raise ValueError(f"unknown object id {g!r}")
            mask |= 1 << g
        return mask

    def _attribute_mask(self, attrs: Iterable[int]) -> int:
        mask = 0
        for a in attrs:
            try:
                a = operator.index(a)
            except TypeError:
                raise ValueError(f"unknown attribute id {a!r}") from None
            if not 0 <= a < self.n_attributes:
                raise ValueError(f"unknown attribute id {a!r}")
            mask |= 1 << a
        return mask

    def _intent_of(self, obj_mask: int) -> int:
        out = (1 << self.n_attributes) - 1
        g = 0
        while obj_mask and out:
            if obj_mask & 1:
                out &= self.rows[g]
            obj_mask >>= 1
            g += 1
        return out

    def _extent_of(self, attr_mask: int) -> int:
        out = (1 << self.n_objects) - 1
        a = 0
        while attr_mask and out:
            if attr_mask & 1:
                out &= self.cols[a]
            attr_mask >>= 1
            a += 1
        return out


def derive_objects(ctx: FormalContext, objs: Iterable[int]) -> frozenset[int]:
    """Attributes shared by every object in ``objs`` (all attributes for an empty set)."""
    return _bits(ctx._intent_of(ctx._object_mask(objs)))


def derive_attributes(ctx: FormalContext, attrs: Iterable[int]) -> frozenset[int]:
    """Objects having every attribute in ``attrs`` (all objects for an empty set)."""
    return _bits(ctx._extent_of(ctx._attribute_mask(attrs)))


def closure_attributes(ctx: FormalContext, attrs: Iterable[int]) -> FormalConcept:
    ext = ctx._extent_of(ctx._attribute_mask(attrs))
    return FormalConcept(_bits(ext), _bits(ctx._intent_of(ext)))


def closure_objects(ctx: FormalContext, objs: Iterable[int]) -> FormalConcept:
    itt = ctx._intent_of(ctx._object_mask(objs))
    return FormalConcept(_bits(ctx._extent_of(itt)), _bits(itt))


def is_concept(ctx: FormalContext, concept: FormalConcept) -> bool:
    return (derive_objects(ctx, concept.extent) == concept.intent
            and derive_attributes(ctx, concept.intent) == concept.extent)


def top_cbo(ctx: FormalContext) -> tuple[FormalConcept, list[FormalConcept]]:
    """Top concept ``(G, G')`` and its lower neighbours.

    A Close-by-One pass truncated after the first level: every attribute not
    in the top intent is added to it and closed; among the distinct extents
    obtained, the inclusion-maximal ones are exactly the covers of the top.

    Neighbours are ordered by descending extent size, then by the sorted
    intent (so the smallest intent attribute decides first).
    """
    if ctx.n_objects == 0 or ctx.n_attributes == 0:
        raise ValueError("top_cbo needs at least one object and one attribute")
    all_objs = (1 << ctx.n_objects) - 1
    top_intent = ctx._intent_of(all_objs)
    top = FormalConcept(_bits(all_objs), _bits(top_intent))

    extents: dict[int, int] = {}
    for a in ctx.attributes:
        if top_intent >> a & 1:
            continue
        ext = ctx._extent_of(top_intent | (1 << a))
        if ext not in extents:
            extents[ext] = ctx._intent_of(ext)

    # an extent is dominated if it is a proper subset of another candidate
    maximal = [e for e in extents
               if not any(e != o and e & o == e for o in extents)]
    lowers = [FormalConcept(_bits(e), _bits(extents[e])) for e in maximal]
    lowers.sort(key=lambda c: (-len(c.extent), sorted(c.intent), sorted(c.extent)))
    return top, lowers


def to_dot(ctx: FormalContext, top: FormalConcept, lowers: Sequence[FormalConcept]) -> str:
    """Graphviz rendering of the top concept and its lower neighbours."""

    def label(c: FormalConcept) -> str:
        ext = ",".join(ctx.object_names[g] for g in sorted(c.extent))
        itt = ",".join(ctx.attribute_names[a] for a in sorted(c.intent))
        return f"{{{ext}}} | {{{itt}}}"

    lines = ["digraph top_concepts {", "  node [shape=box];"]
    lines.append(f'  c0 [label="{label(top)}"];')
    for i, c in enumerate(lowers, start=1):
        lines.append(f'  c{i} [label="{label(c)}"];')
    for i in range(1, len(lowers) + 1):
        lines.append(f"  c0 -> c{i};")
    lines.append("}")
    return "\n".join(lines) + "\n"
