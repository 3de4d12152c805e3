"""Quivers, dimension vectors and the Ringel/Cartan bilinear forms.

Dimension vectors are plain integer tuples ordered like ``Quiver.vertices``.
Functions that accept vectors also take a ``{vertex: int}`` mapping, which is
converted with :func:`as_vector`.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property

from .errors import InputError

Vector = tuple[int, ...]
VectorLike = Sequence[int] | Mapping[str, int]


@dataclass(frozen=True)
class Quiver:
    """Directed multigraph with named vertices; loops and parallel arrows allowed.

    ``names`` optionally labels each arrow; unnamed arrows get ``a0, a1, ...``.
    """

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...] = ()
    names: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "vertices", tuple(str(v) for v in self.vertices))
        object.__setattr__(self, "arrows", tuple((str(t), str(h)) for t, h in self.arrows))
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("vertex identifiers must be unique")
        known = set(self.vertices)
        for t, h in self.arrows:
            if t not in known or h not in known:
                raise InputError(f"arrow {t}->{h} references an undeclared vertex")
        if not self.names:
            object.__setattr__(self, "names", tuple(f"a{k}" for k in range(len(self.arrows))))
        elif len(self.names) != len(self.arrows):
            raise InputError("one name per arrow is required")

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @property
    def size(self) -> int:
        return len(self.vertices)

    def loops(self, v: str) -> int:
        return sum(1 for t, h in self.arrows if t == h == v)

    def arrow_count(self, tail: str, head: str) -> int:
        return sum(1 for t, h in self.arrows if t == tail and h == head)

    def simple(self, v: str) -> Vector:
        i = self.index[v]
        return tuple(int(k == i) for k in range(self.size))

    def relabel(self, mapping: Mapping[str, str], order: Sequence[str] | None = None) -> Quiver:
        """Rename vertices (and optionally reorder them); arrow order is kept."""
        verts = [mapping[v] for v in self.vertices]
        if order is not None:
            if sorted(order) != sorted(verts):
                raise InputError("new vertex order must be a permutation of the renamed vertices")
            verts = list(order)
        return Quiver(
            tuple(verts),
            tuple((mapping[t], mapping[h]) for t, h in self.arrows),
            self.names,
        )


@dataclass(frozen=True)
class DoubleQuiver:
    """The doubled quiver; arrow ``2k`` is original arrow ``k``, ``2k+1`` its reverse."""

    quiver: Quiver
    starred: tuple[bool, ...]
    partner: tuple[int, ...]
    base: Quiver = field(repr=False)

    @property
    def arrows(self) -> tuple[tuple[str, str], ...]:
        return self.quiver.arrows

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def names(self) -> tuple[str, ...]:
        return self.quiver.names


def double_quiver(q: Quiver) -> DoubleQuiver:
    arrows: list[tuple[str, str]] = []
    names: list[str] = []
    starred: list[bool] = []
    partner: list[int] = []
    for k, ((t, h), name) in enumerate(zip(q.arrows, q.names)):
        arrows += [(t, h), (h, t)]
        names += [name, name + "*"]
        starred += [False, True]
        partner += [2 * k + 1, 2 * k]
    return DoubleQuiver(Quiver(q.vertices, tuple(arrows), tuple(names)), tuple(starred), tuple(partner), q)


@dataclass(frozen=True)
class CartanData:
    ringel: tuple[tuple[int, ...], ...]
    cartan: tuple[tuple[int, ...], ...]
    vertices: tuple[str, ...]


def cartan_data(q: Quiver) -> CartanData:
    n = q.size
    ringel = [[int(i == j) for j in range(n)] for i in range(n)]
    for t, h in q.arrows:
        ringel[q.index[t]][q.index[h]] -= 1
    cartan = tuple(tuple(ringel[i][j] + ringel[j][i] for j in range(n)) for i in range(n))
    return CartanData(tuple(map(tuple, ringel)), cartan, q.vertices)


def as_vector(vertices: Sequence[str], x: VectorLike, what: str = "vector") -> Vector:
    """Convert a tuple or ``{vertex: value}`` mapping into a tuple in vertex order."""
    if isinstance(x, Mapping):
        if set(x) != set(vertices):
            raise InputError(f"{what} keys {sorted(x)} do not match vertices {sorted(vertices)}")
        return tuple(int(x[v]) for v in vertices)
    vec = tuple(int(c) for c in x)
    if len(vec) != len(vertices):
        raise InputError(f"{what} has length {len(vec)}, expected {len(vertices)}")
    return vec


def cartan_pairing(cd: CartanData, x: VectorLike, y: VectorLike) -> int:
    xv = as_vector(cd.vertices, x)
    yv = as_vector(cd.vertices, y)
    return sum(xv[i] * c * yv[j] for i, row in enumerate(cd.cartan) for j, c in enumerate(row) if c)


def ringel_pairing(cd: CartanData, x: VectorLike, y: VectorLike) -> int:
    xv = as_vector(cd.vertices, x)
    yv = as_vector(cd.vertices, y)
    return sum(xv[i] * c * yv[j] for i, row in enumerate(cd.ringel) for j, c in enumerate(row) if c)


def p_value(cd: CartanData, a: VectorLike) -> int:
    norm = cartan_pairing(cd, a, a)
    # diagonal entries are even, so the norm always is
    return 1 - norm // 2


def support_connected(q: Quiver, a: VectorLike) -> bool:
    vec = as_vector(q.vertices, a)
    support = {q.vertices[i] for i, c in enumerate(vec) if c > 0}
    if not support:
        return False
    start = next(iter(support))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for t, h in q.arrows:
            for u, w in ((t, h), (h, t)):
                if u == v and w in support and w not in seen:
                    seen.add(w)
                    stack.append(w)
    return seen == support


def dot(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class QuiverSetting:
    """A quiver with a dimension vector and an optional stability parameter."""

    quiver: Quiver
    alpha: Vector
    theta: Vector | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", as_vector(self.quiver.vertices, self.alpha, "dimension"))
        if self.theta is not None:
            object.__setattr__(self, "theta", as_vector(self.quiver.vertices, self.theta, "stability"))

    @cached_property
    def cartan(self) -> CartanData:
        return cartan_data(self.quiver)

    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        return cartan_pairing(self.cartan, x, y)

    def p(self, x: Sequence[int]) -> int:
        return p_value(self.cartan, x)

    def with_alpha(self, alpha: VectorLike) -> QuiverSetting:
        return QuiverSetting(self.quiver, as_vector(self.quiver.vertices, alpha), None)
