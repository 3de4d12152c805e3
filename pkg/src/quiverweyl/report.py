"""Input parsing, the analysis pipeline, report rendering and DOT export."""

from __future__ import annotations

import json
import random
from collections.abc import Mapping, Sequence
from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import InputError, InternalInconsistency, ParseError, ValidationError
from .leaves import (
    LocalQuiver,
    ResolutionKind,
    localize_stability,
    naive_isotropic_decompositions,
    resolution_exists,
    search_leaves,
    stability_class,
)
from .errors import MethodNotApplicable
from .quiver import Quiver, QuiverSetting, dot
from .roots import DEFAULT_MAX_WEIGHT, RootSystem
from .weyl import (
    LeafResult,
    WeylGroupDescriptor,
    analyze_leaf,
    dynkin_automorphism,
    fixed_subgroup_order,
    weyl_order,
)

INPUT_KEYS = {"vertices", "arrows", "dimension", "stability"}
ARROW_KEYS = {"from", "to", "name"}
NAIVE_LEAF_LIMIT = 10
NAIVE_SIGMA_LIMIT = 12


# -- input -------------------------------------------------------------------


def _int_entry(field_name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValidationError(field_name, f"expected an integer, got {value!r}")
    return value


def parse_setting(text: str) -> QuiverSetting:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return setting_from_dict(doc)


def setting_from_dict(doc: Any) -> QuiverSetting:
    if not isinstance(doc, dict):
        raise ValidationError("document", "top level must be a JSON object")
    unknown = set(doc) - INPUT_KEYS
    if unknown:
        raise ValidationError("document", f"unknown keys {sorted(unknown)}")
    for key in ("vertices", "arrows"):
        if key not in doc:
            raise ValidationError(key, "missing")
    raw_vertices = doc["vertices"]
    if not isinstance(raw_vertices, list) or not raw_vertices:
        raise ValidationError("vertices", "expected a nonempty list")
    vertices = []
    for v in raw_vertices:
        if isinstance(v, bool) or not isinstance(v, (str, int)):
            raise ValidationError("vertices", f"vertex identifiers must be strings, got {v!r}")
        vertices.append(str(v))
    if len(set(vertices)) != len(vertices):
        raise ValidationError("vertices", "identifiers must be unique")
    known = set(vertices)

    if not isinstance(doc["arrows"], list):
        raise ValidationError("arrows", "expected a list")
    arrows, names = [], []
    for k, arrow in enumerate(doc["arrows"]):
        where = f"arrows[{k}]"
        if not isinstance(arrow, dict) or not {"from", "to"} <= set(arrow) or set(arrow) - ARROW_KEYS:
            raise ValidationError(where, 'expected {"from": ..., "to": ...}')
        t, h = str(arrow["from"]), str(arrow["to"])
        for end in (t, h):
            if end not in known:
                raise ValidationError(where, f"unknown vertex {end!r}")
        arrows.append((t, h))
        names.append(str(arrow.get("name", f"a{k}")))
    if len(set(names)) != len(names):
        raise ValidationError("arrows", "arrow names must be unique")

    def vector(key: str, required: bool) -> tuple[int, ...] | None:
        if key not in doc:
            if required:
                raise ValidationError(key, "missing")
            return None
        entries = doc[key]
        if not isinstance(entries, dict):
            raise ValidationError(key, "expected an object mapping vertices to integers")
        extra = set(map(str, entries)) - known
        if extra:
            raise ValidationError(key, f"unknown vertices {sorted(extra)}")
        values = {str(k): _int_entry(f"{key}.{k}", v) for k, v in entries.items()}
        return tuple(values.get(v, 0) for v in vertices)

    alpha = vector("dimension", True)
    theta = vector("stability", False)
    if any(a < 0 for a in alpha):
        raise ValidationError("dimension", "entries must be nonnegative")
    if theta is not None and dot(theta, alpha) != 0:
        raise ValidationError("stability", f"theta . alpha = {dot(theta, alpha)}, must be 0")
    return QuiverSetting(Quiver(tuple(vertices), tuple(arrows), tuple(names)), alpha, theta)


def setting_to_dict(setting: QuiverSetting) -> dict:
    q = setting.quiver
    doc: dict[str, Any] = {
        "vertices": list(q.vertices),
        "arrows": [{"from": t, "to": h, "name": n} for (t, h), n in zip(q.arrows, q.names)],
        "dimension": dict(zip(q.vertices, setting.alpha)),
    }
    if setting.theta is not None:
        doc["stability"] = dict(zip(q.vertices, setting.theta))
    return doc


def render_setting(setting: QuiverSetting) -> str:
    return json.dumps(setting_to_dict(setting), indent=2)


def relabel_setting(setting: QuiverSetting, mapping: Mapping[str, str], order: Sequence[str]) -> QuiverSetting:
    """Rename vertices via ``mapping`` and list them in ``order`` (new names)."""
    q = setting.quiver.relabel(mapping, order)
    old_alpha = dict(zip(setting.quiver.vertices, setting.alpha))
    back = {new: old for old, new in mapping.items()}
    alpha = tuple(old_alpha[back[v]] for v in q.vertices)
    theta = None
    if setting.theta is not None:
        old_theta = dict(zip(setting.quiver.vertices, setting.theta))
        theta = tuple(old_theta[back[v]] for v in q.vertices)
    return QuiverSetting(q, alpha, theta)


# -- report ------------------------------------------------------------------


@dataclass
class AnalysisReport:
    setting: dict
    canonical: list
    resolution: list
    components: list
    weyl: dict
    stability: str | None = None
    oracle: dict | None = field(default=None)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> AnalysisReport:
        return cls(**data)


def _leaf_record(leaf: LeafResult, theta: Sequence[int] | None) -> dict:
    iso = leaf.decomposition
    record = {
        "terms": [
            {"root": list(r.vector), "multiplicity": n, "kind": r.kind.value, "p": r.p} for r, n in iso.terms
        ],
        "affine": iso.affine.name,
        "loops": list(iso.local.loops),
        "adjacency": [list(row) for row in iso.local.adjacency],
        "pattern": leaf.pattern.case.value,
        "symmetry_order": leaf.automorphism_order,
        "naive_symmetry_order": leaf.naive_order,
        "weyl_type": leaf.weyl_type.name,
        "order": leaf.order,
    }
    if theta is not None:
        record["local_stability"] = list(localize_stability(theta, iso.terms))
    return record


def analyze(
    setting: QuiverSetting,
    oracle: bool = False,
    max_weight: int = DEFAULT_MAX_WEIGHT,
    seed: int | None = None,
) -> AnalysisReport:
    alpha = setting.alpha
    if not any(alpha):
        raise ValidationError("dimension", "must have a positive entry")
    if any(a < 0 for a in alpha):
        raise ValidationError("dimension", "entries must be nonnegative")
    theta = setting.theta
    if theta is not None and dot(theta, alpha) != 0:
        raise ValidationError("stability", f"theta . alpha = {dot(theta, alpha)}, must be 0")
    rs = RootSystem(setting.quiver, max_weight)
    rs.check_weight(alpha)

    stab = stability_class(rs, alpha, theta).value if theta is not None else None
    canon = rs.canonical_decomposition(alpha)
    verdict = resolution_exists(rs, alpha)
    for vec, _, kind in verdict.components:
        if kind is ResolutionKind.NO_RESOLUTION:
            raise MethodNotApplicable(
                f"canonical component {vec} is neither indivisible nor of (2,2) type", component=vec
            )

    components, factors = [], []
    seen: list[tuple[int, ...]] = []
    leaf_results: dict[tuple[int, ...], list[LeafResult]] = {}
    for root, _ in canon.terms:
        vec = root.vector
        if vec in seen:
            continue
        seen.append(vec)
        search = search_leaves(rs, vec)
        leaves = [analyze_leaf(iso) for iso in search.accepted]
        leaf_results[vec] = leaves
        group = WeylGroupDescriptor.from_factors([leaf.weyl_type for leaf in leaves])
        factors.extend(group.factors)
        components.append(
            {
                "vector": list(vec),
                "leaves": [_leaf_record(leaf, theta) for leaf in leaves],
                "excluded": [[[list(r.vector), n] for r, n in iso.terms] for iso in search.excluded],
                "weyl": group.name,
                "order": group.order,
            }
        )
    total = WeylGroupDescriptor.from_factors(factors)
    report = AnalysisReport(
        setting=setting_to_dict(setting),
        canonical=[{"vector": list(r.vector), "multiplicity": n} for r, n in canon.terms],
        resolution=[
            {"vector": list(vec), "multiplicity": n, "verdict": kind.value} for vec, n, kind in verdict.components
        ],
        components=components,
        weyl={"factors": [t.name for t in total.factors], "name": total.name, "order": total.order},
        stability=stab,
    )
    if oracle:
        report.oracle = run_oracles(setting, rs, leaf_results, max_weight, seed, report)
    return report


def run_oracles(setting, rs: RootSystem, leaf_results, max_weight, seed, report) -> dict:
    """Brute-force cross-checks; any disagreement raises InternalInconsistency."""
    results: dict[str, Any] = {}
    for vec, leaves in leaf_results.items():
        key = ",".join(map(str, vec))
        entry: dict[str, Any] = {"sigma00": "skipped"}
        if sum(vec) <= NAIVE_SIGMA_LIMIT:
            if rs.sigma00_membership(vec) != rs.sigma00_membership(vec, oracle=True):
                raise InternalInconsistency(f"Σ₀,₀ DP and exhaustive search disagree on {vec}")
            entry["sigma00"] = "agree"
        if sum(vec) <= NAIVE_LEAF_LIMIT:
            fast = [leaf.decomposition.key() for leaf in leaves]
            naive = naive_isotropic_decompositions(rs, vec)
            if sorted(fast) != naive:
                raise InternalInconsistency(f"leaf enumeration disagrees with brute force on {vec}")
            entry["leaves"] = "agree"
        else:
            entry["leaves"] = "skipped"
        folds = []
        for leaf in leaves:
            base, phi = dynkin_automorphism(leaf.pattern.case, leaf.decomposition.affine)
            if base.rank > 5:
                folds.append("skipped")
                continue
            if fixed_subgroup_order(base, phi) != weyl_order(leaf.weyl_type):
                raise InternalInconsistency(f"fixed subgroup order disagrees with {leaf.weyl_type.name}")
            folds.append("agree")
        entry["folding"] = folds
        results[key] = entry
    if seed is not None:
        rng = random.Random(seed)
        verts = list(setting.quiver.vertices)
        fresh = [f"v{i}" for i in range(len(verts))]
        rng.shuffle(fresh)
        mapping = dict(zip(verts, fresh))
        order = list(fresh)
        rng.shuffle(order)
        other = analyze(relabel_setting(setting, mapping, order), max_weight=max_weight)
        back = {new: old for old, new in mapping.items()}
        if normalized_report(other, back) != normalized_report(report, {v: v for v in verts}):
            raise InternalInconsistency("analysis changed under a random vertex relabeling")
        results["relabel"] = {"seed": seed, "result": "agree"}
    return results


def normalized_report(report: AnalysisReport, rename: Mapping[str, str]) -> str:
    """Canonical JSON of the report with vertices renamed and all lists sorted.

    Vectors become ``{vertex: value}`` maps under ``rename`` so that reports of
    relabeled inputs can be compared byte for byte.
    """
    verts = report.setting["vertices"]

    def vec(v: Sequence[int]) -> dict:
        return {rename[name]: x for name, x in zip(verts, v)}

    def key(obj) -> str:
        return json.dumps(obj, sort_keys=True)

    def leaf(rec: dict) -> dict:
        terms = sorted(
            ({**t, "root": vec(t["root"])} for t in rec["terms"]),
            key=key,
        )
        out = {k: v for k, v in rec.items() if k not in ("terms", "adjacency", "loops", "local_stability")}
        out["terms"] = terms
        if "local_stability" in rec:
            out["local_stability"] = sorted(rec["local_stability"])
        return out

    data = {
        "setting": {
            "vertices": sorted(rename[v] for v in verts),
            "arrows": sorted(
                (rename[a["from"]], rename[a["to"]]) for a in report.setting["arrows"]
            ),
            "dimension": {rename[k]: v for k, v in report.setting["dimension"].items()},
            "stability": (
                {rename[k]: v for k, v in report.setting["stability"].items()}
                if "stability" in report.setting
                else None
            ),
        },
        "canonical": sorted(({**c, "vector": vec(c["vector"])} for c in report.canonical), key=key),
        "resolution": sorted(({**c, "vector": vec(c["vector"])} for c in report.resolution), key=key),
        "components": sorted(
            (
                {
                    **c,
                    "vector": vec(c["vector"]),
                    "leaves": sorted((leaf(x) for x in c["leaves"]), key=key),
                    "excluded": sorted(
                        (sorted(([vec(v), n] for v, n in terms), key=key) for terms in c.get("excluded", [])),
                        key=key,
                    ),
                }
                for c in report.components
            ),
            key=key,
        ),
        "weyl": report.weyl,
        "stability": report.stability,
    }
    return json.dumps(data, sort_keys=True)


# -- rendering -------------------------------------------------------------------


def _fmt(v: Sequence[int]) -> str:
    return "(" + ", ".join(map(str, v)) + ")"


def _fmt_terms(terms: Sequence[Mapping]) -> str:
    parts = []
    for t in terms:
        vec = t.get("root", t.get("vector"))
        n = t["multiplicity"]
        parts.append(_fmt(vec) if n == 1 else f"{n}*{_fmt(vec)}")
    return " + ".join(parts)


def render_report(report: AnalysisReport, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)
    if fmt != "text":
        raise InputError(f"unknown format {fmt!r}")
    s = report.setting
    lines = [
        f"Quiver: vertices {', '.join(s['vertices'])}; {len(s['arrows'])} arrows",
        f"Dimension vector: {_fmt([s['dimension'][v] for v in s['vertices']])}",
    ]
    if "stability" in s:
        theta = _fmt([s["stability"][v] for v in s["vertices"]])
        lines.append(f"Stability: {theta} ({report.stability})")
    lines.append(f"Canonical decomposition: {_fmt_terms(report.canonical)}")
    for r in report.resolution:
        lines.append(f"Resolution check {_fmt(r['vector'])}: {r['verdict']}")
    for comp in report.components:
        lines.append(f"Component {_fmt(comp['vector'])}: {len(comp['leaves'])} codimension-2 leaves")
        for i, leaf in enumerate(comp["leaves"], start=1):
            lines.append(f"  Leaf {i}: {_fmt_terms(leaf['terms'])}")
            lines.append(
                f"    type {leaf['affine']}, symmetry order {leaf['symmetry_order']}, "
                f"pattern {leaf['pattern']} -> {leaf['weyl_type']} (order {leaf['order']})"
            )
            if "local_stability" in leaf:
                lines.append(f"    local stability {_fmt(leaf['local_stability'])}")
        for terms in comp.get("excluded", []):
            shown = " + ".join(_fmt(v) if n == 1 else f"{n}*{_fmt(v)}" for v, n in terms)
            lines.append(f"  Excluded (loops at a repeated vertex, not codimension 2): {shown}")
        lines.append(f"  W = {comp['weyl']}, order {comp['order']}")
    lines.append(f"W = {report.weyl['name']}, order {report.weyl['order']}")
    if report.oracle is not None:
        lines.append("Oracle checks: " + json.dumps(report.oracle, sort_keys=True))
    return "\n".join(lines) + "\n"


def export_dot(lq: LocalQuiver, name: str = "local") -> str:
    lines = [f"digraph {name} {{"]
    for i in range(lq.k):
        label = f"{_fmt(lq.labels[i].vector)} ({lq.multiplicities[i]})"
        lines.append(f'  v{i} [label="{label}"];')
    for i in range(lq.k):
        lines.extend(f"  v{i} -> v{i};" for _ in range(lq.loops[i]))
        for j in range(lq.k):
            if i != j:
                lines.extend(f"  v{i} -> v{j};" for _ in range(lq.adjacency[i][j]))
    lines.append("}")
    return "\n".join(lines) + "\n"
