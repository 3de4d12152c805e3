"""Label symmetries of local quivers, Dynkin folding and Weyl group assembly."""

from __future__ import annotations

import enum
import math
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InternalInconsistency, MethodNotApplicable
from .leaves import (
    AffineType,
    IsotropicDecomposition,
    LocalQuiver,
    ResolutionKind,
    enumerate_isotropic_decompositions,
    resolution_exists,
)
from .quiver import Vector
from .roots import Root, RootSystem


class PatternCase(enum.Enum):
    NONE = "none"
    A1_PAIR = "A1 pair"
    A3_ONE_PAIR = "A3 one pair"
    A3_TWO_PAIRS = "A3 two pairs"
    D4_ONE_PAIR = "D4 one pair"
    D4_TWO_PAIRS = "D4 two pairs"
    D4_TRIPLE = "D4 triple"
    D4_QUADRUPLE = "D4 quadruple"
    DN_ONE_END_PAIR = "Dn one end pair"
    DN_TWO_END_PAIRS = "Dn two end pairs"


@dataclass(frozen=True)
class EqualityPattern:
    classes: tuple[tuple[int, ...], ...]
    case: PatternCase


@dataclass(frozen=True, order=True)
class CoxeterType:
    letter: str
    rank: int

    @property
    def name(self) -> str:
        return f"{self.letter}{self.rank}"


@dataclass(frozen=True)
class WeylGroupDescriptor:
    factors: tuple[CoxeterType, ...]
    order: int

    @classmethod
    def from_factors(cls, factors: Sequence[CoxeterType]) -> WeylGroupDescriptor:
        ordered = tuple(sorted(factors))
        return cls(ordered, math.prod(weyl_order(t) for t in ordered))

    @property
    def name(self) -> str:
        return " x ".join(t.name for t in self.factors) if self.factors else "1"


@dataclass(frozen=True)
class NaiveSymmetry:
    classes: tuple[tuple[int, ...], ...]
    order: int
    generators: tuple[tuple[int, int], ...]


# -- symmetry groups ---------------------------------------------------------


def label_classes(labels: Sequence[Root | Vector]) -> tuple[tuple[int, ...], ...]:
    """Partition vertex indices by equal label, in order of first appearance."""
    groups: dict[Vector, list[int]] = {}
    for i, lab in enumerate(labels):
        vec = lab.vector if isinstance(lab, Root) else tuple(lab)
        groups.setdefault(vec, []).append(i)
    return tuple(tuple(g) for g in groups.values())


def naive_symmetry_group(labels: Sequence[Root | Vector]) -> NaiveSymmetry:
    classes = label_classes(labels)
    order = math.prod(math.factorial(len(c)) for c in classes)
    gens = tuple((c[j], c[j + 1]) for c in classes for j in range(len(c) - 1))
    return NaiveSymmetry(classes, order, gens)


def labeled_automorphism_group(lq: LocalQuiver) -> list[tuple[int, ...]]:
    """All permutations preserving arrows, loops, multiplicities and labels."""
    k = lq.k
    adj = lq.adjacency
    keys = [(lq.labels[i].vector, lq.loops[i], lq.multiplicities[i]) for i in range(k)]
    found: list[tuple[int, ...]] = []
    image: list[int] = []
    used = [False] * k

    def rec(i: int) -> None:
        if i == k:
            found.append(tuple(image))
            return
        for j in range(k):
            if used[j] or keys[j] != keys[i]:
                continue
            if any(adj[i][m] != adj[j][image[m]] or adj[m][i] != adj[image[m]][j] for m in range(i)):
                continue
            used[j] = True
            image.append(j)
            rec(i + 1)
            image.pop()
            used[j] = False

    rec(0)
    return found


# -- equality patterns -----------------------------------------------------------


def classify_pattern(lq: LocalQuiver, affine: AffineType) -> EqualityPattern:
    classes = label_classes(lq.labels)
    nontrivial = [c for c in classes if len(c) > 1]
    pattern_nodes = sorted(sorted(affine.vertex_matching[i] for i in c) for c in nontrivial)
    sizes = sorted(len(c) for c in nontrivial)
    letter, n = affine.letter, affine.index

    def fail() -> EqualityPattern:
        raise InternalInconsistency(
            f"label classes {pattern_nodes} on ~{letter}{n} match no admissible symmetry"
        )

    if not nontrivial:
        return EqualityPattern(classes, PatternCase.NONE)
    if letter == "A" and n == 1 and pattern_nodes == [[0, 1]]:
        return EqualityPattern(classes, PatternCase.A1_PAIR)
    if letter == "A" and n == 3:
        opposite = [[0, 2], [1, 3]]
        if all(p in opposite for p in pattern_nodes):
            case = PatternCase.A3_ONE_PAIR if len(pattern_nodes) == 1 else PatternCase.A3_TWO_PAIRS
            return EqualityPattern(classes, case)
        return fail()
    if letter == "D" and n == 4:
        outer = {0, 1, 3, 4}
        if not all(set(p) <= outer for p in pattern_nodes):
            return fail()
        case = {
            (2,): PatternCase.D4_ONE_PAIR,
            (2, 2): PatternCase.D4_TWO_PAIRS,
            (3,): PatternCase.D4_TRIPLE,
            (4,): PatternCase.D4_QUADRUPLE,
        }.get(tuple(sizes))
        return EqualityPattern(classes, case) if case else fail()
    if letter == "D" and n >= 5:
        ends = [[0, 1], [n - 1, n]]
        if all(p in ends for p in pattern_nodes):
            case = PatternCase.DN_ONE_END_PAIR if len(pattern_nodes) == 1 else PatternCase.DN_TWO_END_PAIRS
            return EqualityPattern(classes, case)
        return fail()
    return fail()


FOLDS: dict[PatternCase, str] = {
    PatternCase.A3_ONE_PAIR: "C2",
    PatternCase.A3_TWO_PAIRS: "C2",
    PatternCase.D4_ONE_PAIR: "B3",
    PatternCase.D4_TWO_PAIRS: "B3",
    PatternCase.D4_TRIPLE: "G2",
    PatternCase.D4_QUADRUPLE: "G2",
    PatternCase.A1_PAIR: "A1",
}


def fold(affine: AffineType, pattern: EqualityPattern) -> CoxeterType:
    case = pattern.case
    if case is PatternCase.NONE:
        return CoxeterType(affine.letter, affine.index)
    if case in (PatternCase.DN_ONE_END_PAIR, PatternCase.DN_TWO_END_PAIRS):
        return CoxeterType("B", affine.index - 1)
    name = FOLDS[case]
    return CoxeterType(name[0], int(name[1:]))


# -- Weyl groups -------------------------------------------------------------


_E_ORDERS = {6: 51840, 7: 2903040, 8: 696729600}


def weyl_order(t: CoxeterType) -> int:
    n = t.rank
    if t.letter == "A" and n >= 1:
        return math.factorial(n + 1)
    if t.letter in "BC" and n >= 2:
        return 2**n * math.factorial(n)
    if t.letter == "D" and n >= 4:
        return 2 ** (n - 1) * math.factorial(n)
    if t.letter == "G" and n == 2:
        return 12
    if t.letter == "E" and n in _E_ORDERS:
        return _E_ORDERS[n]
    raise ValueError(f"unsupported Coxeter type {t.name}")


def finite_cartan(t: CoxeterType) -> list[list[int]]:
    """Cartan matrix of a finite type.

    Dₙ: path 0..n-2 with node n-1 on n-3. Eₙ: path 0..n-2 with node n-1 on 2.
    """
    n = t.rank
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(a: int, b: int, ab: int = -1, ba: int = -1) -> None:
        c[a][b], c[b][a] = ab, ba

    if t.letter in "ABC":
        for i in range(n - 1):
            link(i, i + 1)
        if t.letter == "B":
            link(n - 2, n - 1, -2, -1)
        elif t.letter == "C":
            link(n - 2, n - 1, -1, -2)
    elif t.letter == "D":
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif t.letter == "E":
        for i in range(n - 2):
            link(i, i + 1)
        link(2, n - 1)
    elif t.letter == "G":
        link(0, 1, -1, -3)
    else:
        raise ValueError(f"unsupported Coxeter type {t.name}")
    return c


def dynkin_automorphism(case: PatternCase, affine: AffineType) -> tuple[CoxeterType, tuple[int, ...]]:
    """Finite type of the leaf before folding and the induced diagram automorphism."""
    base = CoxeterType(affine.letter, affine.index)
    n = affine.index
    if case in (PatternCase.A3_ONE_PAIR, PatternCase.A3_TWO_PAIRS):
        return base, (2, 1, 0)
    if case in (PatternCase.D4_ONE_PAIR, PatternCase.D4_TWO_PAIRS):
        return base, (0, 1, 3, 2)
    if case in (PatternCase.D4_TRIPLE, PatternCase.D4_QUADRUPLE):
        return base, (2, 1, 3, 0)
    if case in (PatternCase.DN_ONE_END_PAIR, PatternCase.DN_TWO_END_PAIRS):
        return base, tuple(range(n - 2)) + (n - 1, n - 2)
    return base, tuple(range(n))


def fixed_subgroup_order(t: CoxeterType, phi: Sequence[int], max_rank: int = 5) -> int:
    """Count w in W(t) with φ(w) = w, by enumerating W in its reflection representation."""
    n = t.rank
    if n > max_rank:
        raise ValueError(f"fixed-subgroup enumeration supports rank <= {max_rank}, got {t.name}")
    c = finite_cartan(t)
    phi = tuple(phi)
    if sorted(phi) != list(range(n)) or any(c[phi[i]][phi[j]] != c[i][j] for i in range(n) for j in range(n)):
        raise ValueError(f"{phi} is not a diagram automorphism of {t.name}")

    def reflection(i: int) -> tuple[tuple[int, ...], ...]:
        # s_i(e_j) = e_j - c[i][j] e_i, stored as rows of the matrix acting on columns
        m = [[int(r == col) for col in range(n)] for r in range(n)]
        for j in range(n):
            m[i][j] -= c[i][j]
        return tuple(map(tuple, m))

    gens = [reflection(i) for i in range(n)]

    def mul(a, b):
        return tuple(tuple(sum(a[r][k] * b[k][col] for k in range(n)) for col in range(n)) for r in range(n))

    ident = tuple(tuple(int(r == col) for col in range(n)) for r in range(n))
    seen = {ident: ident}
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        pw = seen[w]
        for i in range(n):
            nxt = mul(w, gens[i])
            if nxt not in seen:
                seen[nxt] = mul(pw, gens[phi[i]])
                queue.append(nxt)
    return sum(1 for w, pw in seen.items() if w == pw)


# -- assembly ------------------------------------------------------------------


@dataclass(frozen=True)
class LeafResult:
    decomposition: IsotropicDecomposition
    pattern: EqualityPattern
    weyl_type: CoxeterType
    naive_order: int
    automorphism_order: int

    @property
    def order(self) -> int:
        return weyl_order(self.weyl_type)


def analyze_leaf(iso: IsotropicDecomposition) -> LeafResult:
    naive = naive_symmetry_group(iso.local.labels)
    auts = labeled_automorphism_group(iso.local)
    if naive.order != len(auts):
        raise InternalInconsistency(
            f"leaf {iso.key()}: naive symmetry order {naive.order} differs from automorphism order {len(auts)}"
        )
    pattern = classify_pattern(iso.local, iso.affine)
    return LeafResult(iso, pattern, fold(iso.affine, pattern), naive.order, len(auts))


def component_leaves(rs: RootSystem, component: Vector) -> list[LeafResult]:
    return [analyze_leaf(iso) for iso in enumerate_isotropic_decompositions(rs, component)]


def distinct_components(rs: RootSystem, alpha) -> list[Vector]:
    verdict = resolution_exists(rs, alpha)
    for vec, _, kind in verdict.components:
        if kind is ResolutionKind.NO_RESOLUTION:
            raise MethodNotApplicable(
                f"canonical component {vec} is neither indivisible nor of (2,2) type", component=vec
            )
    out: list[Vector] = []
    for vec, _, _ in verdict.components:
        if vec not in out:
            out.append(vec)
    return out


def namikawa_weyl_group(rs: RootSystem, alpha) -> WeylGroupDescriptor:
    factors: list[CoxeterType] = []
    for comp in distinct_components(rs, alpha):
        factors.extend(leaf.weyl_type for leaf in component_leaves(rs, comp))
    return WeylGroupDescriptor.from_factors(factors)
