"""Positive roots, the set Σ₀,₀ of good dimension vectors and canonical decompositions."""

from __future__ import annotations

import enum
import itertools
from collections import Counter
from collections.abc import Iterator, Sequence
from dataclasses import dataclass, field

from .errors import EmptyVariety, InputError, InternalInconsistency
from .quiver import CartanData, Quiver, Vector, as_vector, cartan_data, support_connected

NEG_INF = float("-inf")
DEFAULT_MAX_WEIGHT = 24


class RootKind(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"
    NOT_A_ROOT = "not-a-root"


@dataclass(frozen=True, order=True)
class Root:
    vector: Vector
    kind: RootKind = field(compare=False)
    p: int = field(compare=False)
    norm: int = field(compare=False)

    @property
    def isotropic(self) -> bool:
        return self.norm == 0


@dataclass(frozen=True)
class Decomposition:
    """Multiset of roots; ``terms`` holds (root, multiplicity) sorted by vector."""

    terms: tuple[tuple[Root, int], ...]

    def total(self) -> Vector:
        size = len(self.terms[0][0].vector) if self.terms else 0
        return tuple(sum(n * r.vector[i] for r, n in self.terms) for i in range(size))

    def count(self) -> int:
        return sum(n for _, n in self.terms)

    def vectors(self) -> Counter:
        return Counter({r.vector: n for r, n in self.terms})


def _leq(x: Sequence[int], y: Sequence[int]) -> bool:
    return all(a <= b for a, b in zip(x, y))


def _sub(x: Sequence[int], y: Sequence[int]) -> Vector:
    return tuple(a - b for a, b in zip(x, y))


def vectors_below(bound: Sequence[int]) -> Iterator[Vector]:
    """All nonzero vectors 0 < v <= bound, in lexicographic order."""
    for v in itertools.product(*(range(b + 1) for b in bound)):
        if any(v):
            yield v


class RootSystem:
    """Root test and Σ₀,₀ machinery for one quiver, with memo tables.

    The memo tables are private to the instance, so separate analyses never
    share mutable state.
    """

    def __init__(self, quiver: Quiver, max_weight: int = DEFAULT_MAX_WEIGHT):
        self.quiver = quiver
        self.cd: CartanData = cartan_data(quiver)
        self.max_weight = max_weight
        self._c = self.cd.cartan
        self._n = quiver.size
        self._loop_free = tuple(self._c[i][i] == 2 for i in range(self._n))
        self._kind: dict[Vector, RootKind] = {}
        self._best: dict[Vector, float] = {}
        self._roots_cache: dict[Vector, list[Root]] = {}
        self._sigma: dict[Vector, bool] = {}

    # -- forms -------------------------------------------------------------
    def pairing(self, x: Sequence[int], y: Sequence[int]) -> int:
        c = self._c
        return sum(x[i] * c[i][j] * y[j] for i in range(self._n) if x[i] for j in range(self._n) if y[j])

    def p(self, x: Sequence[int]) -> int:
        return 1 - self.pairing(x, x) // 2

    def vector(self, x) -> Vector:
        return as_vector(self.quiver.vertices, x)

    def check_weight(self, alpha: Sequence[int]) -> None:
        if sum(alpha) > self.max_weight:
            raise InputError(
                f"dimension vector weight {sum(alpha)} exceeds the enumeration limit {self.max_weight}"
                " (raise it with --max-weight)"
            )

    # -- root test ---------------------------------------------------------
    def classify_root(self, beta) -> RootKind:
        beta = self.vector(beta)
        if any(b < 0 for b in beta):
            raise InputError(f"dimension vector {beta} has a negative entry")
        if not any(beta):
            raise InputError("the zero vector is not a candidate root")
        kind = self._kind.get(beta)
        if kind is None:
            kind = self._descend(beta)
            self._kind[beta] = kind
        return kind

    def _descend(self, beta: Vector) -> RootKind:
        c, n = self._c, self._n
        cur = list(beta)
        while True:
            if any(b < 0 for b in cur):
                return RootKind.NOT_A_ROOT
            if sum(cur) == 1:
                i = cur.index(1)
                return RootKind.REAL if self._loop_free[i] else RootKind.IMAGINARY
            for i in range(n):
                # only loop-free vertices can pair positively with a nonnegative vector
                if cur[i] and self._loop_free[i]:
                    s = sum(c[i][j] * cur[j] for j in range(n) if cur[j])
                    if s > 0:
                        cur[i] -= s
                        break
            else:
                if support_connected(self.quiver, cur):
                    return RootKind.IMAGINARY
                return RootKind.NOT_A_ROOT

    def make_root(self, beta) -> Root:
        beta = self.vector(beta)
        kind = self.classify_root(beta)
        if kind is RootKind.NOT_A_ROOT:
            raise InputError(f"{beta} is not a root")
        norm = self.pairing(beta, beta)
        return Root(beta, kind, 1 - norm // 2, norm)

    def enumerate_roots_below(self, bound) -> list[Root]:
        bound = self.vector(bound)
        if any(b < 0 for b in bound):
            raise InputError("bound must be nonnegative")
        cached = self._roots_cache.get(bound)
        if cached is None:
            self.check_weight(bound)
            cover = next((b for b in self._roots_cache if _leq(bound, b)), None)
            if cover is not None:
                cached = [r for r in self._roots_cache[cover] if _leq(r.vector, bound)]
            else:
                cached = [self._root_unchecked(v) for v in vectors_below(bound)]
                cached = [r for r in cached if r is not None]
            self._roots_cache[bound] = cached
        return list(cached)

    def _root_unchecked(self, beta: Vector) -> Root | None:
        kind = self._kind.get(beta)
        if kind is None:
            kind = self._kind[beta] = self._descend(beta)
        if kind is RootKind.NOT_A_ROOT:
            return None
        norm = self.pairing(beta, beta)
        return Root(beta, kind, 1 - norm // 2, norm)

    # -- Σ₀,₀ ----------------------------------------------------------------
    def _roots_within(self, gamma: Vector, universe: list[Root]) -> Iterator[Root]:
        first = next(i for i, g in enumerate(gamma) if g)
        for r in universe:
            if r.vector[first] and _leq(r.vector, gamma):
                yield r

    def best_split(self, gamma: Vector, universe: list[Root] | None = None) -> float:
        """Maximum of Σ p(βᵢ) over decompositions of gamma into positive roots."""
        if universe is None:
            universe = self.enumerate_roots_below(gamma)
        return self._best_dp(gamma, universe)

    def _best_dp(self, gamma: Vector, universe: list[Root]) -> float:
        if not any(gamma):
            return 0
        hit = self._best.get(gamma)
        if hit is not None:
            return hit
        best = NEG_INF
        # some term of every decomposition covers the first support coordinate
        for r in self._roots_within(gamma, universe):
            rest = self._best_dp(_sub(gamma, r.vector), universe)
            if rest != NEG_INF and r.p + rest > best:
                best = r.p + rest
        self._best[gamma] = best
        return best

    def in_positive_cone(self, alpha) -> bool:
        """Whether alpha is a sum of positive roots."""
        alpha = self.vector(alpha)
        return not any(alpha) or self.best_split(alpha) != NEG_INF

    def sigma00_membership(self, alpha, oracle: bool = False) -> bool:
        alpha = self.vector(alpha)
        if any(a < 0 for a in alpha) or not any(alpha):
            raise InputError("Σ₀,₀ membership needs a nonzero nonnegative vector")
        if not oracle and alpha in self._sigma:
            return self._sigma[alpha]
        if self.classify_root(alpha) is RootKind.NOT_A_ROOT:
            return False
        p_alpha = self.p(alpha)
        if oracle:
            return p_alpha > self.naive_best_proper_split(alpha)
        universe = self.enumerate_roots_below(alpha)
        best = NEG_INF
        for r in self._roots_within(alpha, universe):
            if r.vector == alpha:
                continue
            rest = self._best_dp(_sub(alpha, r.vector), universe)
            if rest != NEG_INF:
                best = max(best, r.p + rest)
        result = p_alpha > best
        self._sigma[alpha] = result
        return result

    def naive_best_proper_split(self, alpha: Vector) -> float:
        """Brute-force maximum of Σ p over all root multisets of size >= 2 summing to alpha."""
        roots = [r for r in self.enumerate_roots_below(alpha) if r.vector != alpha]
        best = NEG_INF
        for combo in _multisets(roots, alpha):
            best = max(best, sum(r.p for r in combo))
        return best

    def sigma00_roots_below(self, bound) -> list[Root]:
        return [r for r in self.enumerate_roots_below(bound) if self.sigma00_membership(r.vector)]

    # -- canonical decomposition -------------------------------------------
    def sigma00_decompositions(self, alpha) -> list[Decomposition]:
        alpha = self.vector(alpha)
        roots = self.sigma00_roots_below(alpha)
        return [_to_decomposition(combo) for combo in _multisets(roots, alpha)]

    def canonical_decomposition(self, alpha) -> Decomposition:
        alpha = self.vector(alpha)
        if any(a < 0 for a in alpha) or not any(alpha):
            raise InputError("canonical decomposition needs a nonzero nonnegative vector")
        if not self.in_positive_cone(alpha):
            raise EmptyVariety(f"{alpha} is not a sum of positive roots")
        if self.sigma00_membership(alpha):
            return Decomposition(((self.make_root(alpha), 1),))
        decomps = self.sigma00_decompositions(alpha)
        if not decomps:
            raise EmptyVariety(f"{alpha} admits no decomposition into Σ₀,₀ roots")
        fewest = min(d.count() for d in decomps)
        coarsest = [
            d for d in decomps if d.count() == fewest and all(refines(other, d) for other in decomps)
        ]
        if len(coarsest) != 1:
            raise InternalInconsistency(
                f"{alpha}: expected exactly one coarsest Σ₀,₀ decomposition, found {len(coarsest)}"
            )
        return coarsest[0]


def _multisets(roots: Sequence[Root], target: Vector) -> Iterator[list[Root]]:
    """All multisets of ``roots`` (each reusable) summing exactly to target."""
    ordered = sorted(roots, key=lambda r: r.vector, reverse=True)

    def rec(start: int, remaining: Vector, acc: list[Root]) -> Iterator[list[Root]]:
        if not any(remaining):
            yield list(acc)
            return
        for k in range(start, len(ordered)):
            r = ordered[k]
            if _leq(r.vector, remaining):
                acc.append(r)
                yield from rec(k, _sub(remaining, r.vector), acc)
                acc.pop()

    yield from rec(0, target, [])


def _to_decomposition(combo: Sequence[Root]) -> Decomposition:
    counts = Counter(combo)
    return Decomposition(tuple(sorted(counts.items(), key=lambda t: t[0].vector, reverse=True)))


def refines(finer: Decomposition, coarser: Decomposition) -> bool:
    """Whether finer's terms can be grouped into blocks summing to coarser's terms."""
    pool = Counter(finer.vectors())
    targets = [r.vector for r, n in coarser.terms for _ in range(n)]
    if sum(pool.values()) < len(targets):
        return False
    # sort targets so identical ones are processed consecutively
    targets.sort(reverse=True)

    def cover(idx: int) -> bool:
        if idx == len(targets):
            return not +pool
        return any(cover(idx + 1) for _ in _blocks(pool, targets[idx]))

    return cover(0)


def _blocks(pool: Counter, target: Vector) -> Iterator[None]:
    """Remove a sub-multiset of pool summing to target; yield, then restore."""
    keys = sorted(k for k, v in pool.items() if v)

    def rec(i: int, remaining: Vector) -> Iterator[None]:
        if not any(remaining):
            yield None
            return
        if i == len(keys):
            return
        key = keys[i]
        have = pool[key]
        taken = 0
        rem = remaining
        while True:
            yield from rec(i + 1, rem)
            if taken == have or not _leq(key, rem):
                break
            taken += 1
            pool[key] -= 1
            rem = _sub(rem, key)
        pool[key] += taken

    yield from rec(0, target)

