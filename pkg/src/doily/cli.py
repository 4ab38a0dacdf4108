"""Command-line front end: verify every structural count, print the line-type
census, export the full model (json/dot/csv), and display the Mermin squares.

Exit statuses: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import functools
import io
import itertools
import json
import sys
from dataclasses import dataclass

from . import pauli, veldkamp, w2
from .gf2 import GF2Vector
from .geometry import PointLineGeometry, Hyperplane, mask_of, points_of
from .pauli import PauliCorrespondence
from .veldkamp import LINE_TYPES, VeldkampLine, VeldkampSpace

MODEL_SCHEMA = "doily-model/1"

CENSUS_LABELS = {
    "single-point": "Single Point",
    "collinear-triple": "Collinear Triple",
    "unicentric-triad": "Unicentric Triad",
    "tricentric-triad": "Tricentric Triad",
    "pentad": "Pentad",
}


# -- verification -------------------------------------------------------------

@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: object
    actual: object

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


@dataclass(frozen=True)
class VerificationReport:
    checks: tuple[CheckResult, ...]

    @property
    def overall(self) -> bool:
        return all(c.passed for c in self.checks)


def build_verification_report(quadrangle: PointLineGeometry | None = None) -> VerificationReport:
    """Run the full battery of structural checks.

    ``quadrangle`` overrides the freshly built symplectic model; passing a
    sabotaged geometry here is the fault-injection hook used by the tests.
    """
    checks: list[CheckResult] = []

    def run(name, expected, fn):
        try:
            actual = fn()
        except Exception as exc:
            actual = f"{type(exc).__name__}: {exc}"
        checks.append(CheckResult(name, expected, actual))

    w = quadrangle if quadrangle is not None else w2.build_w2_symplectic()
    get_quad = functools.cache(w2.build_q42)
    get_space = functools.cache(lambda: veldkamp.build_veldkamp_space(w))
    get_quad_space = functools.cache(lambda: veldkamp.build_veldkamp_space(get_quad()))
    get_corr = functools.cache(lambda: pauli.build_bijection(w))
    get_triads = functools.cache(w.triads)
    get_hyps = functools.cache(w.hyperplanes)

    def order_or_failure(g):
        rep = g.verify_gq()
        if rep.is_gq:
            return rep.order
        return f"axiom {rep.axiom} fails at witness {rep.witness}"

    run("quadrangle point count", 15, lambda: w.num_points)
    run("quadrangle line count", 15, lambda: len(w.lines))
    run("quadrangle order", (2, 2), lambda: order_or_failure(w))
    run("points per line", {3}, lambda: {m.bit_count() for m in w.lines})
    run("lines per point", {3}, lambda: {len(w.lines_through(i)) for i in range(w.num_points)})
    run("quadric model point count", 15, lambda: get_quad().num_points)
    run("quadric model line count", 15, lambda: len(get_quad().lines))
    run("quadric model order", (2, 2), lambda: order_or_failure(get_quad()))
    run("models isomorphic", True, lambda: w2.find_isomorphism(w, get_quad()) is not None)
    run("self-dual", True, lambda: w2.find_isomorphism(w, w.dual()) is not None)
    run("automorphism count", 720, lambda: w2.automorphism_count(w))

    run("hyperplane count", 31, lambda: len(get_hyps()))
    for kind, count, size in (("perp", 15, 7), ("grid", 10, 9), ("ovoid", 6, 5)):
        run(f"{kind} hyperplane count", count,
            lambda kind=kind: sum(1 for h in get_hyps() if h.kind == kind))
        run(f"{kind} hyperplane sizes", {size},
            lambda kind=kind: {h.size for h in get_hyps() if h.kind == kind})

    run("triad count", 80, lambda: len(get_triads()))
    for kind, count in (("unicentric", 60), ("tricentric", 20)):
        run(f"{kind} triad count", count,
            lambda kind=kind: sum(1 for t in get_triads() if t.kind == kind))
    run("triads of any other kind", 0,
        lambda: sum(1 for t in get_triads() if t.kind not in ("unicentric", "tricentric")))
    run("unicentric triads inside an ovoid", 60, lambda: _triads_inside_ovoids(w, "unicentric"))
    run("tricentric triads inside an ovoid", 0, lambda: _triads_inside_ovoids(w, "tricentric"))
    run("grid complements are perp-paired tricentric triads", True,
        lambda: _grid_complements_ok(w))
    run("complement triads induce complete bipartite collinearity", True,
        lambda: _complement_bipartite_ok(w))
    run("unicentric triads per center", {4}, lambda: _unicentric_per_center(w))
    run("triads at a center cover its perp-set", True, lambda: _center_cover_ok(w))

    run("Veldkamp point count", 31, lambda: len(get_space().points))
    run("Veldkamp line count", 155, lambda: len(get_space().lines))
    run("members per Veldkamp line", {3},
        lambda: {len(l.members) for l in get_space().lines})
    run("member unions cover the quadrangle", True, lambda: _unions_cover(get_space()))
    run("core sizes odd and at most five", True, lambda: _cores_odd(get_space()))
    run("line-type counts", (15, 15, 60, 20, 45),
        lambda: tuple(get_space().type_counts()[t] for t in LINE_TYPES))
    run("line-type compositions", ((1, 0, 2), (3, 0, 0), (1, 1, 1), (3, 0, 0), (1, 2, 0)),
        lambda: tuple(get_space().compositions()[t] for t in LINE_TYPES))
    run("perp-set present on every line", True, lambda: _perp_on_every_line(get_space()))
    run("no grid-only or ovoid-only lines", True, lambda: _no_homogeneous_grid_ovoid(get_space()))
    run("homogeneous line types", ("collinear-triple", "tricentric-triad"),
        lambda: _homogeneous_types(get_space()))
    run("third-member rule matches the definitional scan", True,
        lambda: _third_member_rule_ok(w, get_space()))
    run("pentads per point", {3}, lambda: _pentads_per_point(get_space()))
    run("functional bijection on the quadric model", True,
        lambda: len(veldkamp.pg42_functional_map(get_quad_space())) == 31)
    run("functional triples sum to zero", True,
        lambda: _functional_triples_ok(get_quad_space()))

    run("operator correspondence certified", True, lambda: bool(get_corr()))
    run("ovoids read as non-commuting pentads", True,
        lambda: all(
            pauli.interpret_hyperplane(h, get_corr()).kind == "noncommuting-pentad"
            for h in get_hyps() if h.kind == "ovoid"))
    run("perp-sets read as commuting with the reference", True,
        lambda: all(
            pauli.interpret_hyperplane(h, get_corr()).kind == "commuting-with-reference"
            for h in get_hyps() if h.kind == "perp"))
    run("Mermin square count", 10, lambda: len(_mermin_squares(w, get_hyps(), get_corr())))
    run("Mermin sign products", {-1},
        lambda: {sq.sign_product for sq in _mermin_squares(w, get_hyps(), get_corr())})
    run("Fano planes isomorphic to PG(2,2)", 15, lambda: _fano_census(w))

    return VerificationReport(tuple(checks))


def _triads_inside_ovoids(w, kind):
    ovoids = [h.mask for h in w.hyperplanes() if h.kind == "ovoid"]
    count = 0
    for t in w.triads():
        if t.kind != kind:
            continue
        tmask = mask_of(t.points)
        if any(tmask & o == tmask for o in ovoids):
            count += 1
    return count


def _tricentric_masks(w):
    return {mask_of(t.points) for t in w.triads() if t.kind == "tricentric"}


def _grid_complements_ok(w):
    tric = _tricentric_masks(w)
    for h in w.hyperplanes():
        if h.kind != "grid":
            continue
        comp = w.full_mask ^ h.mask
        split = None
        for triple in itertools.combinations(points_of(comp), 3):
            t1 = mask_of(triple)
            t2 = comp ^ t1
            if t1 in tric and t2 in tric and w.perp(t1) == t2 and w.perp(t2) == t1:
                split = (t1, t2)
                break
        if split is None:
            return False
    return True


def _complement_bipartite_ok(w):
    tric = _tricentric_masks(w)
    for h in w.hyperplanes():
        if h.kind != "grid":
            continue
        comp = w.full_mask ^ h.mask
        for triple in itertools.combinations(points_of(comp), 3):
            t1 = mask_of(triple)
            t2 = comp ^ t1
            if t1 in tric and t2 in tric and w.perp(t1) == t2:
                for i in points_of(t1):
                    for j in points_of(t2):
                        if not w.collinear(i, j):
                            return False
                for side in (t1, t2):
                    for i, j in itertools.combinations(points_of(side), 2):
                        if w.collinear(i, j):
                            return False
                break
        else:
            return False
    return True


def _unicentric_per_center(w):
    per = {x: 0 for x in range(w.num_points)}
    for t in w.triads():
        if t.kind == "unicentric":
            per[t.centers.bit_length() - 1] += 1
    return set(per.values())


def _center_cover_ok(w):
    for x in range(w.num_points):
        union = 0
        for t in w.triads():
            if t.kind == "unicentric" and t.centers == 1 << x:
                union |= mask_of(t.points)
        if union | (1 << x) != w.point_perp(x):
            return False
    return True


def _unions_cover(space):
    g = space.geometry
    for line in space.lines:
        union = 0
        for i in line.members:
            union |= space.points[i].mask
        if union != g.full_mask:
            return False
    return True


def _cores_odd(space):
    return all(line.core.bit_count() % 2 == 1 and line.core.bit_count() <= 5
               for line in space.lines)


def _perp_on_every_line(space):
    return all(
        any(space.points[i].kind == "perp" for i in line.members)
        for line in space.lines
    )


def _no_homogeneous_grid_ovoid(space):
    for line in space.lines:
        kinds = {space.points[i].kind for i in line.members}
        if kinds <= {"grid", "ovoid"}:
            return False
    return True


def _homogeneous_types(space):
    out = []
    for t in LINE_TYPES:
        comps = {
            tuple(sorted(space.points[i].kind for i in line.members))
            for line in space.lines if line.line_type == t
        }
        if all(len(set(c)) == 1 for c in comps):
            out.append(t)
    return tuple(out)


def _third_member_rule_ok(w, space):
    for i, j in itertools.combinations(range(len(space.points)), 2):
        h1, h2 = space.points[i], space.points[j]
        line = veldkamp.veldkamp_line_through(w, h1, h2, space.points)
        third = [k for k in line.members if k not in (i, j)]
        if len(third) != 1:
            return False
        if space.points[third[0]].mask != veldkamp.third_member_mask(w, h1.mask, h2.mask):
            return False
    return True


def _pentads_per_point(space):
    g = space.geometry
    per = {x: 0 for x in range(g.num_points)}
    seen = set()
    for line in space.lines:
        if line.line_type == "pentad" and line.core not in seen:
            seen.add(line.core)
            per[veldkamp.pentad_center(g, line.core)] += 1
    return set(per.values())


def _functional_triples_ok(space):
    mapping = veldkamp.pg42_functional_map(space)
    for line in space.lines:
        a, b, c = (mapping[i] for i in line.members)
        if a ^ b ^ c:
            return False
    return True


def _mermin_squares(w, hyps, corr):
    return [pauli.mermin_square(h, corr) for h in hyps if h.kind == "grid"]


def _fano_census(w):
    reference = w2.projective_geometry(2)
    return sum(
        1 for x in range(w.num_points)
        if w2.find_isomorphism(w2.fano_plane_at(w, x), reference) is not None
    )


# -- report rendering -----------------------------------------------------------

def _jsonable(value):
    if isinstance(value, (set, frozenset)):
        return sorted(_jsonable(v) for v in value)
    if isinstance(value, (tuple, list)):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def render_report_text(report: VerificationReport) -> str:
    lines = []
    for c in report.checks:
        tag = " OK " if c.passed else "FAIL"
        lines.append(
            f"[{tag}] {c.name}: expected {json.dumps(_jsonable(c.expected))}, "
            f"got {json.dumps(_jsonable(c.actual))}"
        )
    passed = sum(1 for c in report.checks if c.passed)
    verdict = "PASS" if report.overall else "FAIL"
    lines.append(f"overall: {verdict} ({passed}/{len(report.checks)} checks)")
    return "\n".join(lines) + "\n"


def render_report_json(report: VerificationReport) -> str:
    payload = {
        "checks": [
            {
                "name": c.name,
                "expected": _jsonable(c.expected),
                "actual": _jsonable(c.actual),
                "passed": c.passed,
            }
            for c in report.checks
        ],
        "overall": report.overall,
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


# -- model assembly and export -----------------------------------------------------

@dataclass(frozen=True)
class ModelBundle:
    """Everything the exports need, in symplectic-model indexing."""

    quadrangle: PointLineGeometry
    space: VeldkampSpace
    correspondence: PauliCorrespondence
    functionals: dict[int, int]  # hyperplane index -> functional mask on GF(2)^5


def build_model_bundle() -> ModelBundle:
    """Build the full model: quadrangle, Veldkamp space, operator
    correspondence, and functional coordinates transported from the quadric
    model through the lexicographically first isomorphism."""
    w = w2.build_w2_symplectic()
    space = veldkamp.build_veldkamp_space(w)
    corr = pauli.build_bijection(w)
    quad = w2.build_q42()
    iso = w2.find_isomorphism(w, quad)
    if iso is None:
        raise w2.ConstructionError("the two quadrangle models are not isomorphic")
    quad_space = veldkamp.build_veldkamp_space(quad)
    quad_functionals = veldkamp.pg42_functional_map(quad_space)
    index_by_mask = {h.mask: i for i, h in enumerate(quad_space.points)}
    functionals = {}
    for i, h in enumerate(space.points):
        image = mask_of(iso[p] for p in points_of(h.mask))
        functionals[i] = quad_functionals[index_by_mask[image]]
    for line in space.lines:
        a, b, c = (functionals[i] for i in line.members)
        if a ^ b ^ c:
            raise veldkamp.IsomorphismError(
                f"transported functionals of line {line.members} do not sum to zero"
            )
    return ModelBundle(w, space, corr, functionals)


def census_rows(space: VeldkampSpace) -> list[tuple[str, int, int, int, int]]:
    """(label, perp-sets, grids, ovoids, line count) per type, census order."""
    counts = space.type_counts()
    comps = space.compositions()
    return [
        (CENSUS_LABELS[t], comps[t][0], comps[t][1], comps[t][2], counts[t])
        for t in LINE_TYPES
    ]


def model_to_dict(bundle: ModelBundle) -> dict:
    w = bundle.quadrangle
    space = bundle.space
    return {
        "schema": MODEL_SCHEMA,
        "points": [
            {
                "index": i,
                "label_bits": list(w.labels[i].bits),
                "label_mask": w.labels[i].mask,
                "mnemonic": bundle.correspondence.operators[i].mnemonic,
            }
            for i in range(w.num_points)
        ],
        "lines": [
            {"index": j, "mask": m, "points": list(points_of(m))}
            for j, m in enumerate(w.lines)
        ],
        "hyperplanes": [
            {
                "index": i,
                "mask": h.mask,
                "points": list(h.points),
                "kind": h.kind,
                "center": h.center,
            }
            for i, h in enumerate(space.points)
        ],
        "veldkamp_lines": [
            {
                "index": k,
                "members": list(line.members),
                "line_type": line.line_type,
                "core_mask": line.core,
                "core_points": list(points_of(line.core)),
            }
            for k, line in enumerate(space.lines)
        ],
        "functionals": [
            {
                "hyperplane": i,
                "mask": bundle.functionals[i],
                "bits": list(GF2Vector(bundle.functionals[i], 5).bits),
            }
            for i in range(len(space.points))
        ],
        "census": [
            {
                "line_type": label,
                "perp_sets": p,
                "grids": g,
                "ovoids": o,
                "count": n,
            }
            for label, p, g, o, n in census_rows(space)
        ],
    }


def bundle_from_dict(data: dict) -> ModelBundle:
    """Rebuild the model objects from an exported dictionary."""
    if data.get("schema") != MODEL_SCHEMA:
        raise ValueError(f"unknown model schema {data.get('schema')!r}")
    labels = [GF2Vector.from_bits(p["label_bits"]) for p in data["points"]]
    lines = [entry["mask"] for entry in data["lines"]]
    w = PointLineGeometry(len(labels), lines, labels)
    hyps = tuple(
        Hyperplane(entry["mask"], entry["kind"], entry["center"])
        for entry in data["hyperplanes"]
    )
    vlines = tuple(
        VeldkampLine(tuple(entry["members"]), entry["core_mask"], entry["line_type"])
        for entry in data["veldkamp_lines"]
    )
    space = VeldkampSpace(w, hyps, vlines)
    corr = pauli.build_bijection(w)
    functionals = {entry["hyperplane"]: entry["mask"] for entry in data["functionals"]}
    return ModelBundle(w, space, corr, functionals)


def render_model_json(bundle: ModelBundle) -> str:
    return json.dumps(model_to_dict(bundle), indent=2, sort_keys=True) + "\n"


def render_census_csv(space: VeldkampSpace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["core_set_type", "perp_sets", "grids", "ovoids", "lines"])
    for row in census_rows(space):
        writer.writerow(row)
    return buf.getvalue()


def render_census_text(space: VeldkampSpace) -> str:
    rows = census_rows(space)
    header = f"{'Type of Core-Set':<18} {'Perp-Sets':>9} {'Grids':>6} {'Ovoids':>7} {'Lines':>6}"
    out = [header, "-" * len(header)]
    for label, p, g, o, n in rows:
        out.append(f"{label:<18} {p:>9} {g:>6} {o:>7} {n:>6}")
    out.append("-" * len(header))
    out.append(f"{'Total':<18} {'':>9} {'':>6} {'':>7} {sum(r[4] for r in rows):>6}")
    return "\n".join(out) + "\n"


def render_dot(bundle: ModelBundle) -> str:
    """Two graphs: the quadrangle's collinearity graph and the Veldkamp
    point-line incidence graph."""
    w = bundle.quadrangle
    ops = bundle.correspondence.operators
    out = ["graph collinearity {"]
    for i in range(w.num_points):
        out.append(f'  p{i} [label="{ops[i].mnemonic}"];')
    edges = sorted(
        (i, j)
        for i, j in itertools.combinations(range(w.num_points), 2)
        if w.collinear(i, j)
    )
    for i, j in edges:
        out.append(f"  p{i} -- p{j};")
    out.append("}")
    out.append("")
    out.append("graph veldkamp_incidence {")
    for i, h in enumerate(bundle.space.points):
        out.append(f'  h{i} [label="{h.kind}-{i}" shape=box];')
    for k in range(len(bundle.space.lines)):
        out.append(f'  v{k} [label="v{k}" shape=point];')
    for k, line in enumerate(bundle.space.lines):
        for i in line.members:
            out.append(f"  h{i} -- v{k};")
    out.append("}")
    return "\n".join(out) + "\n"


def render_mermin(bundle: ModelBundle, quiet: bool = False) -> str:
    w = bundle.quadrangle
    corr = bundle.correspondence
    grids = [h for h in bundle.space.points if h.kind == "grid"]
    out = []
    minus_counts = []
    for k, h in enumerate(grids):
        square = pauli.mermin_square(h, corr)
        signs = square.row_signs + square.col_signs
        minus_counts.append(sum(1 for s in signs if s == -1))
        if quiet:
            out.append(f"grid {k}: six-sign product {square.sign_product:+d}")
            continue
        out.append(f"grid {k} (points {' '.join(str(p) for p in h.points)}):")
        for i, row in enumerate(square.mnemonic_rows()):
            out.append(f"  {'  '.join(row)}   | {square.row_signs[i]:+d}")
        out.append("  " + "-" * 10 + "--+----")
        out.append(
            "  " + "  ".join(f"{s:+d}" for s in square.col_signs)
            + f"   | product {square.sign_product:+d}"
        )
        out.append("")
    distribution = {}
    for c in minus_counts:
        distribution[c] = distribution.get(c, 0) + 1
    out.append(f"grids: {len(grids)}")
    out.append(
        "observed minus-sign distribution: "
        + ", ".join(f"{c} grid(s) with {m} of 6 signs negative"
                    for m, c in sorted(distribution.items()))
    )
    return "\n".join(out) + "\n"


# -- command dispatch ----------------------------------------------------------

def _write_output(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def cmd_verify(fmt: str, output: str | None,
               quadrangle: PointLineGeometry | None = None) -> int:
    report = build_verification_report(quadrangle)
    rendered = render_report_text(report) if fmt == "text" else render_report_json(report)
    sys.stdout.write(rendered)
    if output is not None:
        _write_output(output, rendered)
    return 0 if report.overall else 1


def cmd_table1(fmt: str) -> int:
    space = veldkamp.build_veldkamp_space(w2.build_w2_symplectic())
    rendered = render_census_text(space) if fmt == "text" else render_census_csv(space)
    sys.stdout.write(rendered)
    return 0


def cmd_export(fmt: str, output: str) -> int:
    bundle = build_model_bundle()
    if fmt == "json":
        rendered = render_model_json(bundle)
    elif fmt == "dot":
        rendered = render_dot(bundle)
    else:
        rendered = render_census_csv(bundle.space)
    _write_output(output, rendered)
    return 0


def cmd_mermin(quiet: bool) -> int:
    sys.stdout.write(render_mermin(build_model_bundle(), quiet))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="doily",
        description=(
            "Exact engine for the generalized quadrangle of order two, its "
            "Veldkamp space, and the two-qubit operator correspondence."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run every structural check")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--output", default=None, help="also write the report here")

    p_table = sub.add_parser("table1", help="print the line-type census")
    p_table.add_argument("--format", choices=("text", "csv"), default="text")

    p_export = sub.add_parser("export", help="write the model to a file")
    p_export.add_argument("--format", choices=("json", "dot", "csv"), required=True)
    p_export.add_argument("--output", required=True)

    p_mermin = sub.add_parser("mermin", help="print the ten Mermin squares")
    p_mermin.add_argument("--quiet", action="store_true",
                          help="one line per grid instead of full squares")

    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args.format, args.output)
        if args.command == "table1":
            return cmd_table1(args.format)
        if args.command == "export":
            return cmd_export(args.format, args.output)
        return cmd_mermin(args.quiet)
    except OSError as exc:
        print(f"doily: cannot write output: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
