"""Exact checks on explicit representations of doubled quivers.

Matrices are sympy matrices over the rationals. A matrix on an arrow
``t -> h`` has shape ``dim(h) x dim(t)``.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping, Sequence
from dataclasses import dataclass, field

import sympy
from sympy import Matrix, Rational, eye, zeros
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from .errors import InputError, InternalInconsistency
from .quiver import DoubleQuiver, Quiver, cartan_data, cartan_pairing, dot, double_quiver


def rank(m: Matrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return DomainMatrix.from_Matrix(m).convert_to(QQ).rank()


@dataclass(frozen=True)
class Representation:
    double: DoubleQuiver
    dims: tuple[int, ...]
    matrices: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        idx = self.double.quiver.index
        if len(self.matrices) != len(self.double.arrows):
            raise InputError("one matrix per arrow of the double quiver is required")
        for (t, h), name, m in zip(self.double.arrows, self.double.names, self.matrices):
            want = (self.dims[idx[h]], self.dims[idx[t]])
            if m.shape != want:
                raise InputError(f"arrow {name}: shape {m.shape}, expected {want}")

    @classmethod
    def build(cls, quiver: Quiver, dims: Sequence[int], values: Mapping[str, object] | None = None) -> Representation:
        """Create a representation from ``{arrow name: matrix}``; absent arrows are zero.

        Starred arrows are addressed as ``name*``.
        """
        dq = double_quiver(quiver)
        values = dict(values or {})
        unknown = set(values) - set(dq.names)
        if unknown:
            raise InputError(f"unknown arrows {sorted(unknown)}")
        idx = dq.quiver.index
        mats = []
        for (t, h), name in zip(dq.arrows, dq.names):
            shape = (dims[idx[h]], dims[idx[t]])
            raw = values.get(name)
            m = zeros(*shape) if raw is None else _as_matrix(raw, shape)
            mats.append(m)
        return cls(dq, tuple(dims), tuple(mats))

    @property
    def quiver(self) -> Quiver:
        return self.double.base

    def matrix(self, name: str) -> Matrix:
        return self.matrices[self.double.names.index(name)]


def _as_matrix(raw, shape: tuple[int, int]) -> Matrix:
    m = raw if isinstance(raw, Matrix) else Matrix(raw)
    if m.shape != shape and m.shape == (shape[1], shape[0]) and 1 in shape:
        m = m.T
    if m.shape != shape:
        raise InputError(f"matrix of shape {m.shape} where {shape} is needed")
    return m.applyfunc(sympy.nsimplify)


@dataclass(frozen=True)
class SubspaceFamily:
    """Per-vertex column bases of candidate subspaces."""

    bases: tuple[Matrix, ...]

    def __post_init__(self) -> None:
        for b in self.bases:
            if b.cols > b.rows or rank(b) != b.cols:
                raise InputError("subspace basis columns must be linearly independent")

    @classmethod
    def of(cls, rep: Representation, spans: Mapping[str, Sequence[Sequence[int]]]) -> SubspaceFamily:
        """Build from ``{vertex: [vector, ...]}``; unlisted vertices get the zero subspace."""
        bases = []
        for v, d in zip(rep.double.vertices, rep.dims):
            vecs = spans.get(v, [])
            bases.append(Matrix.hstack(*[Matrix(d, 1, list(x)) for x in vecs]) if vecs else zeros(d, 0))
        return cls(tuple(bases))

    def dims(self) -> tuple[int, ...]:
        return tuple(b.cols for b in self.bases)


# -- core checks ---------------------------------------------------------------


def moment_map(rep: Representation) -> tuple[Matrix, ...]:
    dq = rep.double
    idx = dq.quiver.index
    out = [zeros(d, d) for d in rep.dims]
    for k, ((t, h), starred) in enumerate(zip(dq.arrows, dq.starred)):
        if starred:
            continue
        a, a_star = rep.matrices[k], rep.matrices[dq.partner[k]]
        out[idx[h]] += a * a_star
        out[idx[t]] -= a_star * a
    return tuple(out)


def is_preprojective(rep: Representation) -> bool:
    return all(m.is_zero_matrix for m in moment_map(rep))


def hom_dimension(m: Representation, n: Representation) -> int:
    """Dimension of the space of intertwiners m -> n."""
    if m.double.quiver != n.double.quiver:
        raise InputError("representations live on different quivers")
    dq = m.double
    idx = dq.quiver.index
    offsets, total = [], 0
    for dm, dn in zip(m.dims, n.dims):
        offsets.append(total)
        total += dm * dn
    if total == 0:
        return 0

    def var(v: int, r: int, c: int) -> int:
        return offsets[v] + r * m.dims[v] + c

    rows: list[dict[int, object]] = []
    for k, (t, h) in enumerate(dq.arrows):
        ti, hi = idx[t], idx[h]
        a_m, a_n = m.matrices[k], n.matrices[k]
        # (φ_h a_m - a_n φ_t)[r, c] = 0
        for r in range(n.dims[hi]):
            for c in range(m.dims[ti]):
                row: dict[int, object] = {}
                for q in range(m.dims[hi]):
                    if a_m[q, c] != 0:
                        key = var(hi, r, q)
                        row[key] = row.get(key, 0) + a_m[q, c]
                for q in range(n.dims[ti]):
                    if a_n[r, q] != 0:
                        key = var(ti, q, c)
                        row[key] = row.get(key, 0) - a_n[r, q]
                if any(v != 0 for v in row.values()):
                    rows.append(row)
    if not rows:
        return total
    system = zeros(len(rows), total)
    for i, row in enumerate(rows):
        for j, v in row.items():
            system[i, j] = v
    return total - rank(system)


def ext1_dimension(m: Representation, n: Representation) -> int:
    cd = cartan_data(m.quiver)
    value = hom_dimension(m, n) + hom_dimension(n, m) - cartan_pairing(cd, m.dims, n.dims)
    if value < 0:
        raise InternalInconsistency(f"Ext^1 formula gives negative dimension {value}")
    return value


def socle_vertex_part(rep: Representation) -> tuple[int, ...]:
    """Per vertex, the dimension of the common kernel of all outgoing arrows."""
    dq = rep.double
    out = []
    for v, d in zip(dq.vertices, rep.dims):
        maps = [rep.matrices[k] for k, (t, _) in enumerate(dq.arrows) if t == v and rep.matrices[k].rows]
        stacked = Matrix.vstack(*maps) if maps else zeros(0, d)
        out.append(d - rank(stacked))
    return tuple(out)


def theta_pairing(theta: Sequence[int], d: Sequence[int]) -> int:
    if len(theta) != len(d):
        raise InputError("stability parameter and dimension vector differ in length")
    return dot(theta, d)


def is_subrepresentation(rep: Representation, sub: SubspaceFamily) -> bool:
    dq = rep.double
    idx = dq.quiver.index
    if len(sub.bases) != len(rep.dims) or any(b.rows != d for b, d in zip(sub.bases, rep.dims)):
        raise InputError("subspace family does not match the representation dimensions")
    for k, (t, h) in enumerate(dq.arrows):
        head, image = sub.bases[idx[h]], rep.matrices[k] * sub.bases[idx[t]]
        if image.cols == 0 or image.is_zero_matrix:
            continue
        if rank(Matrix.hstack(head, image)) != head.cols:
            return False
    return True


def is_direct_sum(rep: Representation, parts: Sequence[SubspaceFamily]) -> bool:
    """Whether the given subrepresentations are complementary at every vertex."""
    if not all(is_subrepresentation(rep, p) for p in parts):
        return False
    for v, d in enumerate(rep.dims):
        cols = [p.bases[v] for p in parts]
        if sum(c.cols for c in cols) != d:
            return False
        if d and rank(Matrix.hstack(*cols)) != d:
            return False
    return True


def vertex_simple(quiver: Quiver, v: str) -> Representation:
    dims = [int(u == v) for u in quiver.vertices]
    return Representation.build(quiver, dims)


def direct_sum(reps: Sequence[Representation]) -> Representation:
    first = reps[0]
    dims = tuple(sum(r.dims[i] for r in reps) for i in range(len(first.dims)))
    mats = tuple(sympy.diag(*[r.matrices[k] for r in reps]) for k in range(len(first.matrices)))
    return Representation(first.double, dims, mats)


def change_basis(rep: Representation, transforms: Sequence[Matrix]) -> Representation:
    """Apply invertible g_v at every vertex: ρ(a) -> g_h ρ(a) g_t⁻¹."""
    idx = rep.double.quiver.index
    inverses = [g.inv() for g in transforms]
    mats = tuple(
        transforms[idx[h]] * m * inverses[idx[t]] for (t, h), m in zip(rep.double.arrows, rep.matrices)
    )
    return Representation(rep.double, rep.dims, mats)


def flip_representation(rep: Representation, sigma: Mapping[str, str]) -> Representation:
    """Transport rep along a quiver automorphism σ, with signs keeping μ = 0.

    Base arrows between {i, j} go to base arrows between {σi, σj} in order.
    When the image arrow points the other way, the pair swaps its starred and
    unstarred roles and the arrow that becomes starred picks up a minus sign.
    """
    dq = rep.double
    verts = dq.vertices
    if sorted(sigma) != sorted(verts) or sorted(sigma.values()) != sorted(verts):
        raise InputError("sigma must be a permutation of the vertices")
    base = dq.base

    def groups(q: Quiver) -> dict[frozenset, list[int]]:
        out: dict[frozenset, list[int]] = {}
        for k, (t, h) in enumerate(q.arrows):
            out.setdefault(frozenset((t, h)), []).append(k)
        return out

    src, dst = groups(base), groups(base)
    target_of: dict[int, int] = {}
    flipped: dict[int, bool] = {}
    for key, arrows in src.items():
        image = frozenset(sigma[v] for v in key)
        targets = dst.get(image, [])
        if len(targets) != len(arrows):
            raise InputError("sigma does not preserve the arrow counts of the quiver")
        for a, b in zip(arrows, targets):
            t, h = base.arrows[a]
            target_of[a] = b
            flipped[a] = base.arrows[b] != (sigma[t], sigma[h])
    new = [None] * len(dq.arrows)
    for a, b in target_of.items():
        m_a, m_star = rep.matrices[2 * a], rep.matrices[2 * a + 1]
        if flipped[a]:
            new[2 * b] = m_star
            new[2 * b + 1] = -m_a
        else:
            new[2 * b] = m_a
            new[2 * b + 1] = m_star
    idx = dq.quiver.index
    dims = [0] * len(verts)
    for v in verts:
        dims[idx[sigma[v]]] = rep.dims[idx[v]]
    return Representation(dq, tuple(dims), tuple(new))


# -- fixture catalog -------------------------------------------------------------

E1 = Matrix([1, 0])
E2 = Matrix([0, 1])
PI1 = Matrix([[1, 0]])
NIL = Matrix([[0, 0], [1, 0]])
E11 = Matrix([[1, 0], [0, 0]])
E22 = Matrix([[0, 0], [0, 1]])


@dataclass(frozen=True)
class Fixture:
    name: str
    build: Callable[[dict], Representation]
    defaults: dict[str, Rational]
    summary: str
    summands: Callable[[Representation], list[SubspaceFamily]] | None = field(default=None, repr=False)


def _intro_quiver() -> Quiver:
    return Quiver(("1", "2", "3"), (("1", "2"), ("2", "3"), ("2", "2")), ("a", "b", "l"))


def _intro_leaf(p: dict) -> Representation:
    return Representation.build(
        _intro_quiver(),
        (1, 2, 1),
        {"l": sympy.diag(p["k1"], p["k2"]), "l*": sympy.diag(p["k1s"], p["k2s"])},
    )


def _intro_r1(p: dict) -> Representation:
    return Representation.build(
        _intro_quiver(),
        (1, 2, 1),
        {
            "a": E1,
            "a*": Matrix([[0, p["k1s"] - p["k2s"]]]),
            "b": Matrix([[p["s"], 1]]),
            "l": Matrix([[p["k1"], 1], [0, p["k2"]]]),
            "l*": sympy.diag(p["k1s"], p["k2s"]),
        },
    )


def _intro_r3(p: dict, literal: bool = False) -> Representation:
    # the published template has the two entries of a* swapped, which breaks μ = 0
    a_star = [0, p["k2s"] - p["k1s"]] if literal else [p["k2s"] - p["k1s"], 0]
    return Representation.build(
        _intro_quiver(),
        (1, 2, 1),
        {
            "a": E2,
            "a*": Matrix([a_star]),
            "b": Matrix([[p["s"], 1]]),
            "l": Matrix([[p["k1"], 0], [1, p["k2"]]]),
            "l*": sympy.diag(p["k1s"], p["k2s"]),
        },
    )


def intro_r3_as_printed(params: Mapping[str, object] | None = None) -> Representation:
    """The R3 template exactly as printed, kept out of the catalog because μ ≠ 0."""
    return _intro_r3(_params(FIXTURES["A1-intro-R3"], params), literal=True)


def cycle_quiver() -> Quiver:
    return Quiver(("0", "1", "2", "3"), (("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")), ("x1", "x2", "x3", "x4"))


def _cycle(nonzero: Sequence[str], t) -> Representation:
    values = {name: Matrix([[1]]) for name in nonzero}
    values[nonzero[-1]] = Matrix([[t]])
    return Representation.build(cycle_quiver(), (1, 1, 1, 1), values)


D4_OUTER = ("C", "B", "A", "D")


def star_quiver() -> Quiver:
    """D̃₄ with outer vertices pointing at the center E; C is the special vertex."""
    return Quiver(D4_OUTER + ("E",), tuple((v, "E") for v in D4_OUTER), tuple(f"x{v}" for v in D4_OUTER))


def _star(values: dict) -> Representation:
    return Representation.build(star_quiver(), (1, 1, 1, 1, 2), values)


def _d4_family(which: int, s) -> Representation:
    row = Matrix([[1, s]])
    legs = {
        1: {"xB": 0 * E1, "xB*": row, "xA": E2, "xA*": PI1, "xD": -E2, "xD*": PI1},
        2: {"xB": E2, "xB*": PI1, "xA": 0 * E1, "xA*": row, "xD": -E2, "xD*": PI1},
        3: {"xB": E2, "xB*": PI1, "xA": -E2, "xA*": PI1, "xD": 0 * E1, "xD*": row},
    }[which]
    return _star({"xC": E1, **legs})


def _d4_middle(p: dict) -> Representation:
    a, b = p["a"], p["b"]
    return _star(
        {"xC": E1, "xB": a * E2, "xB*": PI1, "xA": b * E2, "xA*": PI1, "xD": (-a - b) * E2, "xD*": PI1}
    )


def dn_quiver(n: int, orientation: str) -> Quiver:
    """D̃ₙ: leaves A, B on C1, chain C1..C(n-3), leaves H and I (special) on the last chain vertex.

    ``orientation`` picks the unstarred direction of the leaf and chain arrows:
    "in" has A, B -> C1 and a forward chain; "out" has C1 -> A, B and a forward
    chain; "mixed" has A -> C1, C1 -> B and a forward chain. H and I always hang
    off the last chain vertex as G -> H and I -> G.
    """
    if n < 5:
        raise InputError("Dn fixtures need n >= 5")
    chain = [f"C{i}" for i in range(1, n - 2)]
    first, last = chain[0], chain[-1]
    leaf_a = ("A", first) if orientation in ("in", "mixed") else (first, "A")
    leaf_b = ("B", first) if orientation == "in" else (first, "B")
    arrows = [leaf_a, leaf_b]
    arrows += [(chain[i], chain[i + 1]) for i in range(len(chain) - 1)]
    arrows += [(last, "H"), ("I", last)]
    names = ["yA", "yB"] + [f"z{i}" for i in range(1, len(chain))] + ["yH", "yI"]
    return Quiver(("A", "B", *chain, "H", "I"), tuple(arrows), tuple(names))


def _dn(which: int, p: dict) -> Representation:
    n = int(p["n"])
    s = p["s"]
    row = Matrix([[1, s]])
    chain_len = n - 3
    dims = (1, 1) + (2,) * chain_len + (1, 1)
    if which in (1, 2):
        q = dn_quiver(n, "in")
        if which == 1:
            values = {"yA": 0 * E1, "yA*": row, "yB": E2, "yB*": PI1}
        else:
            values = {"yA": E2, "yA*": PI1, "yB": 0 * E1, "yB*": row}
        forward, back = NIL, eye(2)
        values.update({"yH": PI1, "yH*": E2, "yI": E1, "yI*": 0 * PI1})
    elif which == 3:
        q = dn_quiver(n, "out")
        a = p["a"]
        values = {"yA": PI1, "yA*": a * E2, "yB": PI1, "yB*": (-a - 1) * E2}
        forward, back = eye(2), NIL
        values.update({"yH": PI1, "yH*": E2, "yI": E1, "yI*": 0 * PI1})
    else:
        q = dn_quiver(n, "mixed")
        values = {"yA": E2, "yA*": PI1, "yB": PI1, "yB*": E2}
        forward, back = E22, E11
        values.update({"yH": row, "yH*": 0 * E1, "yI": E1, "yI*": 0 * PI1})
    for i in range(1, chain_len):
        values[f"z{i}"] = forward
        values[f"z{i}*"] = back
    return Representation.build(q, dims, values)


def _partial_d4(vectors: Sequence[Matrix]) -> Representation:
    return _star({f"x{v}": vec for v, vec in zip(D4_OUTER, vectors)})


def _partial_d4_split(pairs: Sequence[tuple[str, str]]):
    def summands(rep: Representation) -> list[SubspaceFamily]:
        out = []
        for group in pairs:
            vec = list(rep.matrix(f"x{group[0]}"))
            out.append(SubspaceFamily.of(rep, {group[0]: [[1]], group[1]: [[1]], "E": [vec]}))
        return out

    return summands


def _params(fx: Fixture, given: Mapping[str, object] | None) -> dict:
    params = dict(fx.defaults)
    for key, value in (given or {}).items():
        if key not in params:
            raise InputError(f"fixture {fx.name} has no parameter {key!r}; known: {sorted(params)}")
        params[key] = sympy.Rational(str(value)) if not isinstance(value, sympy.Basic) else value
    return params


_R = sympy.Rational
_KAPPA = {"k1": _R(0), "k1s": _R(1), "k2": _R(1), "k2s": _R(0)}

FIXTURES: dict[str, Fixture] = {}


def _register(name: str, build, defaults: dict, summary: str, summands=None) -> None:
    FIXTURES[name] = Fixture(name, build, dict(defaults), summary, summands)


_register("A1-intro-leaf", _intro_leaf, _KAPPA, "direct sum of simples on the intro quiver leaf")
_register("A1-intro-R1", _intro_r1, {**_KAPPA, "s": _R(0)}, "first fiber family over the intro leaf")
_register("A1-intro-R3", _intro_r3, {**_KAPPA, "s": _R(0)}, "last fiber family over the intro leaf (a* corrected)")
_register("A3-smooth-1", lambda p: _cycle(["x1", "x2", "x3", "x4*"], p["t"]), {"t": _R(1)}, "A3 exceptional fiber, left family")
_register("A3-smooth-2", lambda p: _cycle(["x1", "x2", "x3*", "x4*"], p["t"]), {"t": _R(1)}, "A3 exceptional fiber, middle family")
_register("A3-smooth-3", lambda p: _cycle(["x1", "x2*", "x3*", "x4*"], p["t"]), {"t": _R(1)}, "A3 exceptional fiber, right family")
for _k in (1, 2, 3):
    _register(f"D4-smooth-{_k}", lambda p, k=_k: _d4_family(k, p["s"]), {"s": _R(0)}, f"D4 exceptional fiber, outer family {_k}")
_register("D4-smooth-middle", _d4_middle, {"a": _R(1), "b": _R(2)}, "D4 exceptional fiber, central family (third leg -a-b)")
for _k in (1, 2, 3, 4):
    _defaults = {"n": _R(5), "s": _R(0)}
    if _k == 3:
        _defaults["a"] = _R(1)
    _register(f"Dn-smooth-{_k}", lambda p, k=_k: _dn(k, p), _defaults, f"Dn exceptional fiber, family shape {_k}")
_register(
    "partial-A3-family",
    lambda p: _cycle(["x1", "x2*", "x4*", "x3"], p["t"]),
    {"t": _R(1)},
    "A3 partial resolution, one-parameter family",
)
_register(
    "partial-A3-singular-1",
    lambda p: Representation.build(cycle_quiver(), (1, 1, 1, 1), {"x1": [[1]], "x3": [[1]]}),
    {},
    "A3 partial resolution, first singular point",
    lambda rep: [SubspaceFamily.of(rep, {"0": [[1]], "1": [[1]]}), SubspaceFamily.of(rep, {"2": [[1]], "3": [[1]]})],
)
_register(
    "partial-A3-singular-2",
    lambda p: Representation.build(cycle_quiver(), (1, 1, 1, 1), {"x2*": [[1]], "x4*": [[1]]}),
    {},
    "A3 partial resolution, second singular point",
    lambda rep: [SubspaceFamily.of(rep, {"2": [[1]], "1": [[1]]}), SubspaceFamily.of(rep, {"0": [[1]], "3": [[1]]})],
)
_register(
    "partial-D4-family",
    lambda p: _partial_d4([E1, E2, E1 + E2, E1 + p["a"] * E2]),
    {"a": _R(2)},
    "D4 partial resolution, one-parameter family",
)
for _k, (_vecs, _pairs) in enumerate(
    [
        ((E1, E2, E1, E2), [("C", "A"), ("B", "D")]),
        ((E1, E1, E2, E2), [("C", "B"), ("A", "D")]),
        ((E1, E2, E2, E1), [("C", "D"), ("B", "A")]),
    ],
    start=1,
):
    _register(
        f"partial-D4-singular-{_k}",
        lambda p, v=_vecs: _partial_d4(v),
        {},
        f"D4 partial resolution, singular point {_k}",
        _partial_d4_split(_pairs),
    )


def fixture(name: str, params: Mapping[str, object] | None = None) -> Representation:
    try:
        fx = FIXTURES[name]
    except KeyError:
        raise InputError(f"unknown fixture {name!r}; known: {', '.join(sorted(FIXTURES))}") from None
    return fx.build(_params(fx, params))


def fixture_summands(name: str, params: Mapping[str, object] | None = None) -> list[SubspaceFamily] | None:
    fx = FIXTURES[name]
    if fx.summands is None:
        return None
    return fx.summands(fixture(name, params))
