"""Discretized circle: edges, arcs, marked vertices and the standard regions."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..algebra import AlgebraError

__all__ = ["LatticeCircle", "Arc", "GeometryError"]


class GeometryError(AlgebraError):
    """Lattice geometry cannot host the requested construction."""


@dataclass(frozen=True)
class Arc:
    """Counterclockwise run of ``length`` edges starting at edge ``start``.

    Edge ``k`` joins vertex ``k`` to vertex ``k + 1`` (indices mod ``n``).
    """

    start: int
    length: int
    n: int

    def __post_init__(self):
        if not 1 <= self.length <= self.n - 1:
            raise GeometryError(f"arc length must be in 1..{self.n - 1}, got {self.length}")
        object.__setattr__(self, "start", self.start % self.n)

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple((self.start + j) % self.n for j in range(self.length))

    @property
    def boundary(self) -> tuple[int, int]:
        return (self.start, (self.start + self.length) % self.n)

    @property
    def interior_vertices(self) -> tuple[int, ...]:
        return tuple((self.start + j) % self.n for j in range(1, self.length))

    def contains_vertex(self, v: int) -> bool:
        return v % self.n in self.interior_vertices

    def contains(self, other: "Arc") -> bool:
        return set(other.edges) <= set(self.edges) and self._order_ok(other)

    def _order_ok(self, other: "Arc") -> bool:
        e = self.edges
        if other.edges[0] not in e:
            return False
        i = e.index(other.edges[0])
        return e[i : i + other.length] == other.edges

    def position_in(self, other: "Arc") -> int:
        """Offset of this arc's first edge inside ``other``."""
        if not other.contains(self):
            raise GeometryError(f"{self} is not inside {other}")
        return other.edges.index(self.edges[0])

    def disjoint_interiors(self, other: "Arc") -> bool:
        return not (set(self.edges) & set(other.edges))

    def as_list(self) -> list[int]:
        """``[first_edge, last_edge]`` as used by the JSON formats."""
        return [self.edges[0], self.edges[-1]]

    def __str__(self) -> str:
        return f"arc[{self.edges[0]}..{self.edges[-1]}]"


class LatticeCircle:
    """Circle cut into ``n`` edges, ``n`` divisible by 4."""

    def __init__(self, n: int):
        if n < 4 or n % 4:
            raise GeometryError(f"need n divisible by 4 and at least 4, got {n}")
        self.n = n

    # marked vertices
    @property
    def right(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.n // 4

    @property
    def left(self) -> int:
        return self.n // 2

    @property
    def bottom(self) -> int:
        return 3 * self.n // 4

    def arc(self, start: int, length: int) -> Arc:
        return Arc(start, length, self.n)

    def arc_from_edges(self, first: int, last: int) -> Arc:
        return Arc(first, (last - first) % self.n + 1, self.n)

    # standard regions
    @property
    def upper(self) -> Arc:
        return self.arc(0, self.n // 2)

    @property
    def lower(self) -> Arc:
        return self.arc(self.n // 2, self.n // 2)

    @property
    def left_half(self) -> Arc:
        return self.arc(self.n // 4, self.n // 2)

    @property
    def right_half(self) -> Arc:
        return self.arc(3 * self.n // 4, self.n // 2)

    def quarters(self) -> tuple[Arc, Arc, Arc, Arc]:
        """``J1..J4`` centred on +1, +i, −1, −i; needs ``n`` divisible by 8."""
        if self.n % 8:
            raise GeometryError("quarter arcs need n divisible by 8")
        e = self.n // 8
        q = self.n // 4
        return (self.arc(-e, q), self.arc(e, q), self.arc(3 * e, q), self.arc(5 * e, q))

    def is_white(self, edge: int) -> bool:
        """Edges with nonpositive real part (left half)."""
        return self.n // 4 <= edge % self.n < 3 * self.n // 4

    def reflect_edge(self, edge: int) -> int:
        """Reflection across the real axis."""
        return (self.n - 1 - edge) % self.n

    def mirror_edge(self, edge: int) -> int:
        """Reflection across the imaginary axis."""
        return (self.n // 2 - 1 - edge) % self.n

    @cached_property
    def all_arcs(self) -> tuple[Arc, ...]:
        return tuple(self.arc(s, l) for l in range(1, self.n) for s in range(self.n))

    def sector_arcs(self) -> tuple[Arc, ...]:
        """Arcs with ±i not on the boundary and not containing both."""
        out = []
        for a in self.all_arcs:
            if self.top in a.boundary or self.bottom in a.boundary:
                continue
            if a.contains_vertex(self.top) and a.contains_vertex(self.bottom):
                continue
            out.append(a)
        return tuple(out)
