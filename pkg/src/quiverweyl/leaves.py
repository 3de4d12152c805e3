"""Isotropic decompositions, labeled local quivers and affine ADE recognition."""

from __future__ import annotations

import enum
import math
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from functools import lru_cache, reduce

from sympy.utilities.iterables import partitions

from .errors import InputError, InternalInconsistency
from .quiver import Vector, dot
from .roots import Root, RootKind, RootSystem, _multisets, vectors_below

MAX_LEAF_VERTICES = 9
MAX_LEAF_MULTIPLICITY = 6
ALLOWED_PAIRINGS = frozenset({0, -1, -2})


@dataclass(frozen=True)
class LocalQuiver:
    """Labeled local quiver: one vertex per decomposition term.

    ``loops[i]`` counts loops in the doubled local quiver (2·p(βᵢ));
    ``adjacency[i][j]`` is the number of arrows i→j, i.e. −(βᵢ,βⱼ).
    """

    loops: tuple[int, ...]
    adjacency: tuple[tuple[int, ...], ...]
    multiplicities: tuple[int, ...]
    labels: tuple[Root, ...]

    @property
    def k(self) -> int:
        return len(self.labels)

    def full_pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Cartan form of the local quiver with its loops."""
        total = 0
        for i in range(self.k):
            for j in range(self.k):
                c = 2 - self.loops[i] if i == j else -self.adjacency[i][j]
                total += x[i] * c * y[j]
        return total

    def reduced_pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        """Cartan form with the loops dropped."""
        total = 0
        for i in range(self.k):
            for j in range(self.k):
                c = 2 if i == j else -self.adjacency[i][j]
                total += x[i] * c * y[j]
        return total


@dataclass(frozen=True)
class AffineType:
    letter: str
    index: int
    vertex_matching: tuple[int, ...]

    @property
    def name(self) -> str:
        return f"~{self.letter}{self.index}"


@dataclass(frozen=True)
class LeafSearch:
    """Accepted leaves plus candidates rejected only for loops at a repeated vertex."""

    accepted: list
    excluded: list


@dataclass(frozen=True)
class IsotropicDecomposition:
    terms: tuple[tuple[Root, int], ...]
    local: LocalQuiver
    affine: AffineType

    def key(self) -> tuple:
        return tuple((r.vector, n) for r, n in self.terms)


class StabilityClass(enum.Enum):
    GENERIC = "generic"
    PSEUDO_GENERIC = "pseudo-generic"
    DEGENERATE = "degenerate"


class ResolutionKind(enum.Enum):
    INDIVISIBLE = "indivisible"
    TWO_TWO = "(2,2)"
    NO_RESOLUTION = "no-resolution"


@dataclass(frozen=True)
class ResolutionVerdict:
    components: tuple[tuple[Vector, int, ResolutionKind], ...]

    @property
    def ok(self) -> bool:
        return all(kind is not ResolutionKind.NO_RESOLUTION for _, _, kind in self.components)


# -- affine catalog ----------------------------------------------------------


@dataclass(frozen=True)
class AffineDiagram:
    letter: str
    index: int
    adjacency: tuple[tuple[int, ...], ...]
    delta: tuple[int, ...]


def _diagram(letter: str, index: int, size: int, edges: Sequence[tuple[int, int]], delta) -> AffineDiagram:
    adj = [[0] * size for _ in range(size)]
    for a, b in edges:
        adj[a][b] += 1
        adj[b][a] += 1
    return AffineDiagram(letter, index, tuple(map(tuple, adj)), tuple(delta))


@lru_cache(maxsize=None)
def affine_diagram(letter: str, index: int) -> AffineDiagram:
    """Extended Dynkin diagram with its null root δ.

    Node numbering: Ãₙ is the cycle 0..n; D̃ₙ has leaves 0,1 on node 2, a
    chain 2..n-2 and leaves n-1,n on node n-2; Ẽ₆ is the line 0..4 with arm
    2-5-6; Ẽ₇ the line 0..6 with arm 3-7; Ẽ₈ the line 0..7 with node 8 on 2.
    """
    if letter == "A" and index >= 1:
        n = index
        if n == 1:
            return _diagram("A", 1, 2, [(0, 1), (0, 1)], (1, 1))
        return _diagram("A", n, n + 1, [(i, (i + 1) % (n + 1)) for i in range(n + 1)], (1,) * (n + 1))
    if letter == "D" and index >= 4:
        n = index
        edges = [(0, 2), (1, 2)] + [(i, i + 1) for i in range(2, n - 2)] + [(n - 2, n - 1), (n - 2, n)]
        delta = [1, 1] + [2] * (n - 3) + [1, 1]
        return _diagram("D", n, n + 1, edges, delta)
    if letter == "E" and index == 6:
        return _diagram("E", 6, 7, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5), (5, 6)], (1, 2, 3, 2, 1, 2, 1))
    if letter == "E" and index == 7:
        edges = [(i, i + 1) for i in range(6)] + [(3, 7)]
        return _diagram("E", 7, 8, edges, (1, 2, 3, 4, 3, 2, 1, 2))
    if letter == "E" and index == 8:
        edges = [(i, i + 1) for i in range(7)] + [(2, 8)]
        return _diagram("E", 8, 9, edges, (2, 4, 6, 5, 4, 3, 2, 1, 3))
    raise ValueError(f"no affine diagram of type ~{letter}{index}")


def diagrams_with_size(size: int) -> list[AffineDiagram]:
    out = []
    if size >= 2:
        out.append(affine_diagram("A", size - 1))
    if size >= 5:
        out.append(affine_diagram("D", size - 1))
    if size in (7, 8, 9):
        out.append(affine_diagram("E", size - 1))
    return out


def all_affine_diagrams(max_size: int = MAX_LEAF_VERTICES) -> list[AffineDiagram]:
    return [d for size in range(2, max_size + 1) for d in diagrams_with_size(size)]


# -- local quivers -------------------------------------------------------------


def build_local_quiver(rs: RootSystem, terms: Sequence[tuple[Root, int]]) -> LocalQuiver:
    labels = tuple(r for r, _ in terms)
    k = len(labels)
    adjacency = tuple(
        tuple(0 if i == j else -rs.pairing(labels[i].vector, labels[j].vector) for j in range(k)) for i in range(k)
    )
    return LocalQuiver(
        loops=tuple(2 * r.p for r in labels),
        adjacency=adjacency,
        multiplicities=tuple(n for _, n in terms),
        labels=labels,
    )


def _match(lq: LocalQuiver, diag: AffineDiagram) -> tuple[int, ...] | None:
    k = lq.k
    adj, target = lq.adjacency, diag.adjacency
    assignment: list[int] = []
    used = [False] * k

    def rec(i: int) -> bool:
        if i == k:
            return True
        for node in range(k):
            if used[node] or diag.delta[node] != lq.multiplicities[i]:
                continue
            if any(adj[i][j] != target[node][assignment[j]] for j in range(i)):
                continue
            if sum(adj[i]) != sum(target[node]):
                continue
            used[node] = True
            assignment.append(node)
            if rec(i + 1):
                return True
            assignment.pop()
            used[node] = False
        return False

    return tuple(assignment) if rec(0) else None


def recognize_kleinian(lq: LocalQuiver) -> AffineType | None:
    """Match the loop-free part of the local quiver against the affine catalog."""
    if lq.k < 2 or any(a < 0 for row in lq.adjacency for a in row):
        return None
    for diag in diagrams_with_size(lq.k):
        matching = _match(lq, diag)
        if matching is not None:
            m = lq.multiplicities
            reduced_p = 1 - lq.reduced_pairing(m, m) // 2
            if reduced_p != 1:
                raise InternalInconsistency(f"Kleinian match {diag.letter}{diag.index} has p = {reduced_p} != 1")
            return AffineType(diag.letter, diag.index, matching)
    return None


def _check_bookkeeping(rs: RootSystem, alpha: Vector, terms: Sequence[tuple[Root, int]]) -> None:
    lhs = rs.p(alpha)
    rhs = 1 + sum(r.p for r, _ in terms)
    if lhs != rhs:
        shown = " + ".join(f"{n}*{r.vector}" for r, n in terms)
        raise InternalInconsistency(
            f"dimension bookkeeping fails for {alpha} = {shown}: p(alpha) = {lhs} but 1 + sum p(beta_i) = {rhs}"
        )


def check_repeated_labels(lq: LocalQuiver, alpha: Vector) -> None:
    """Repeated labels must be isotropic imaginary roots.

    The single exception is the leaf β + β of the (2,2) case, where α = 2β and
    p(β) = 2.
    """
    counts = Counter(r.vector for r in lq.labels)
    for vec, c in counts.items():
        if c < 2:
            continue
        root = next(r for r in lq.labels if r.vector == vec)
        if root.kind is RootKind.IMAGINARY and root.isotropic:
            continue
        two_two = lq.k == 2 and tuple(2 * x for x in vec) == tuple(alpha) and root.p == 2
        if not two_two:
            raise InternalInconsistency(f"label {vec} repeats but is not an isotropic imaginary root")


def enumerate_isotropic_decompositions(rs: RootSystem, alpha) -> list[IsotropicDecomposition]:
    return search_leaves(rs, alpha).accepted


def search_leaves(rs: RootSystem, alpha) -> LeafSearch:
    """Enumerate isotropic decompositions of alpha.

    A candidate whose loop-free local quiver is Kleinian but which has a vertex
    with loops and multiplicity above one is reported in ``excluded``: dropping
    those loops changes the local singularity, and the stratum is not of
    codimension two.
    """
    alpha = rs.vector(alpha)
    rs.check_weight(alpha)
    roots = [r for r in rs.sigma00_roots_below(alpha) if r.vector != alpha]
    items = sorted(
        ((r, n) for r in roots for n in range(1, MAX_LEAF_MULTIPLICITY + 1) if all(n * b <= a for b, a in zip(r.vector, alpha))),
        key=lambda t: (t[0].vector, t[1]),
        reverse=True,
    )
    # pairwise Cartan values between roots, reused across the search
    pair = {(a.vector, b.vector): rs.pairing(a.vector, b.vector) for a in roots for b in roots}
    found: list[IsotropicDecomposition] = []
    excluded: list[IsotropicDecomposition] = []
    chosen: list[tuple[Root, int]] = []

    def rec(start: int, remaining: Vector) -> None:
        if not any(remaining):
            if len(chosen) >= 2:
                _accept(rs, alpha, tuple(chosen), found, excluded)
            return
        if len(chosen) == MAX_LEAF_VERTICES:
            return
        for idx in range(start, len(items)):
            r, n = items[idx]
            if any(n * b > a for b, a in zip(r.vector, remaining)):
                continue
            if any(pair[(r.vector, s.vector)] not in ALLOWED_PAIRINGS for s, _ in chosen):
                continue
            chosen.append((r, n))
            rec(idx, tuple(a - n * b for a, b in zip(remaining, r.vector)))
            chosen.pop()

    rec(0, alpha)
    found.sort(key=IsotropicDecomposition.key)
    excluded.sort(key=IsotropicDecomposition.key)
    return LeafSearch(found, excluded)


def loops_at_repeated_vertex(terms: Sequence[tuple[Root, int]]) -> bool:
    return any(n > 1 and r.p > 0 for r, n in terms)


def _accept(rs: RootSystem, alpha: Vector, terms, found: list, excluded: list) -> None:
    reals = [r.vector for r, _ in terms if r.kind is RootKind.REAL]
    if len(reals) != len(set(reals)):
        return
    lq = build_local_quiver(rs, terms)
    affine = recognize_kleinian(lq)
    if affine is None:
        return
    if loops_at_repeated_vertex(terms):
        excluded.append(IsotropicDecomposition(tuple(terms), lq, affine))
        return
    _check_bookkeeping(rs, alpha, terms)
    check_repeated_labels(lq, alpha)
    found.append(IsotropicDecomposition(tuple(terms), lq, affine))


def naive_isotropic_decompositions(rs: RootSystem, alpha) -> list[tuple]:
    """Brute-force oracle: every root multiset, every grouping of repeats into vertices.

    Returns the sorted keys ``((vector, n), ...)`` of accepted decompositions.
    Σ₀,₀ membership is decided by the exhaustive oracle, not the DP.
    """
    alpha = rs.vector(alpha)
    roots = [r for r in rs.enumerate_roots_below(alpha) if r.vector != alpha]
    good = {r.vector for r in roots if rs.sigma00_membership(r.vector, oracle=True)}
    keys = set()
    for combo in _multisets(roots, alpha):
        if any(r.vector not in good for r in combo):
            continue
        counts = Counter(combo)
        for grouping in _groupings(sorted(counts.items(), key=lambda t: t[0].vector)):
            terms = tuple(sorted(grouping, key=lambda t: (t[0].vector, t[1]), reverse=True))
            if len(terms) < 2 or loops_at_repeated_vertex(terms):
                continue
            reals = [r.vector for r, _ in terms if r.kind is RootKind.REAL]
            if len(reals) != len(set(reals)):
                continue
            lq = build_local_quiver(rs, terms)
            if recognize_kleinian(lq) is not None:
                keys.add(tuple((r.vector, n) for r, n in terms))
    return sorted(keys)


def _groupings(counts: Sequence[tuple[Root, int]]) -> Iterator[list[tuple[Root, int]]]:
    if not counts:
        yield []
        return
    (root, total), rest = counts[0], counts[1:]
    for part in partitions(total):
        here = [(root, size) for size, mult in sorted(part.items()) for _ in range(mult)]
        for tail in _groupings(rest):
            yield here + tail


# -- stability and resolutions ------------------------------------------------


def localize_stability(theta: Sequence[int], terms: Sequence[tuple[Root, int]]) -> tuple[int, ...]:
    local = tuple(dot(r.vector, theta) for r, _ in terms)
    if sum(n * t for (_, n), t in zip(terms, local)) != 0:
        raise InputError("localized stability parameter does not pair to zero with the local dimension vector")
    return local


def _gcd(vec: Sequence[int]) -> int:
    return reduce(math.gcd, vec, 0)


def stability_class(rs: RootSystem, alpha, theta) -> StabilityClass:
    alpha = rs.vector(alpha)
    theta = rs.vector(theta)
    if dot(theta, alpha) != 0:
        raise InputError(f"stability parameter {theta} does not pair to zero with {alpha}")
    zeros = [b for b in vectors_below(alpha) if b != alpha and dot(theta, b) == 0]
    if not zeros:
        return StabilityClass.GENERIC
    if _gcd(alpha) == 2:
        half = tuple(a // 2 for a in alpha)
        if zeros == [half] and rs.p(half) == 2:
            return StabilityClass.PSEUDO_GENERIC
    return StabilityClass.DEGENERATE


def resolution_kind(rs: RootSystem, component: Vector) -> ResolutionKind:
    g = _gcd(component)
    if g == 1:
        return ResolutionKind.INDIVISIBLE
    if g == 2 and rs.p(tuple(c // 2 for c in component)) == 2:
        return ResolutionKind.TWO_TWO
    return ResolutionKind.NO_RESOLUTION


def resolution_exists(rs: RootSystem, alpha) -> ResolutionVerdict:
    canon = rs.canonical_decomposition(alpha)
    return ResolutionVerdict(tuple((r.vector, n, resolution_kind(rs, r.vector)) for r, n in canon.terms))
