"""Shared quiver settings for the test suite."""

from __future__ import annotations

import random

from quiverweyl.leaves import affine_diagram
from quiverweyl.quiver import Quiver, QuiverSetting

KLEINIAN_TYPES = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("D", 4), ("D", 5), ("D", 6), ("E", 6), ("E", 7), ("E", 8)]

# δ of ~E8 has weight 30, above the default enumeration cap
CORPUS_MAX_WEIGHT = 30


def intro_quiver() -> Quiver:
    return Quiver(("1", "2", "3"), (("1", "2"), ("2", "3"), ("2", "2")))


def intro_setting(theta=(-1, -1, 3)) -> QuiverSetting:
    return QuiverSetting(intro_quiver(), (1, 2, 1), theta)


def kleinian_quiver(letter: str, index: int) -> tuple[Quiver, tuple[int, ...]]:
    """An orientation of the extended Dynkin diagram, with δ."""
    diag = affine_diagram(letter, index)
    size = len(diag.delta)
    arrows = []
    for i in range(size):
        for j in range(i + 1, size):
            arrows += [(str(i), str(j))] * diag.adjacency[i][j]
    return Quiver(tuple(map(str, range(size))), tuple(arrows)), diag.delta


def path_quiver(n: int) -> Quiver:
    return Quiver(tuple(str(i) for i in range(1, n + 1)), tuple((str(i), str(i + 1)) for i in range(1, n)))


def random_quiver(rng: random.Random, n: int, max_arrows: int) -> Quiver:
    verts = tuple(str(i) for i in range(n))
    arrows = tuple((rng.choice(verts), rng.choice(verts)) for _ in range(rng.randint(1, max_arrows)))
    return Quiver(verts, arrows)


def random_settings(seed: int, count: int, max_total: int = 6) -> list[QuiverSetting]:
    """3-4 vertex quivers with a nonzero dimension vector of weight at most ``max_total``."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.choice([3, 4])
        q = random_quiver(rng, n, 6)
        alpha = [0] * n
        for _ in range(rng.randint(1, max_total)):
            alpha[rng.randrange(n)] += 1
        out.append(QuiverSetting(q, tuple(alpha)))
    return out


def named_settings() -> list[tuple[str, QuiverSetting]]:
    """Intro example, every Kleinian quiver at δ, and a few hand-picked extras."""
    out = [("intro", intro_setting())]
    for letter, index in KLEINIAN_TYPES:
        q, delta = kleinian_quiver(letter, index)
        out.append((f"~{letter}{index}", QuiverSetting(q, delta)))
    q, delta = kleinian_quiver("A", 2)
    out.append(("~A2 at 2delta", QuiverSetting(q, tuple(2 * d for d in delta))))
    out.append(("A3 path", QuiverSetting(path_quiver(3), (1, 1, 1))))
    out.append(("jordan 2", QuiverSetting(Quiver(("0",), (("0", "0"),)), (2,))))
    out.append(("two loops 2", QuiverSetting(Quiver(("0",), (("0", "0"), ("0", "0"))), (2,))))
    out.append(
        ("A3 cycle with loop", QuiverSetting(Quiver(("0", "1", "2", "3"), (("0", "1"), ("1", "2"), ("2", "3"), ("3", "0"), ("1", "1"))), (1, 2, 1, 1)))
    )
    for name, vertices, arrows, alpha in SYMMETRIC_LEAVES:
        out.append((name, QuiverSetting(Quiver(vertices, arrows), alpha)))
    return out


# settings whose leaves carry each kind of repeated-label symmetry
SYMMETRIC_LEAVES = [
    ("A3 one pair", ("0", "1", "2"), (("0", "1"), ("0", "2"), ("0", "0"), ("2", "2")), (2, 1, 1)),
    ("A3 two pairs", ("0", "1"), (("1", "0"), ("1", "1"), ("0", "0")), (2, 2)),
    ("D4 one pair", ("J", "a", "b", "c"), (("J", "J"), ("J", "c"), ("a", "c"), ("b", "c")), (2, 1, 1, 2)),
    ("D4 two pairs", ("J", "K", "c"), (("J", "J"), ("K", "K"), ("J", "c"), ("K", "c")), (2, 2, 2)),
    ("D4 triple", ("0", "1", "2"), (("0", "0"), ("1", "2"), ("2", "0"), ("1", "1")), (3, 1, 2)),
    ("D4 quadruple", ("0", "1"), (("0", "0"), ("0", "1")), (4, 2)),
    ("D5 end pair", ("J", "c1", "c2", "a", "b"), (("J", "J"), ("J", "c1"), ("c1", "c2"), ("a", "c2"), ("b", "c2")), (2, 2, 2, 1, 1)),
    ("D5 two end pairs", ("J", "K", "c1", "c2"), (("J", "J"), ("K", "K"), ("J", "c1"), ("c1", "c2"), ("K", "c2")), (2, 2, 2, 2)),
]
