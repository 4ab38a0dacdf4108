import json

import pytest

from doily.cli import (
    build_model_bundle,
    build_verification_report,
    bundle_from_dict,
    census_rows,
    cmd_verify,
    main,
    model_to_dict,
    render_census_csv,
    render_census_text,
    render_dot,
    render_mermin,
    render_model_json,
    render_report_json,
    render_report_text,
)
from doily.geometry import PointLineGeometry


@pytest.fixture(scope="module")
def bundle():
    return build_model_bundle()


@pytest.fixture(scope="module")
def report():
    return build_verification_report()


class TestVerification:
    def test_all_checks_pass(self, report):
        failing = [c for c in report.checks if not c.passed]
        assert report.overall, failing

    def test_check_names_unique(self, report):
        names = [c.name for c in report.checks]
        assert len(set(names)) == len(names)

    def test_text_rendering(self, report):
        text = render_report_text(report)
        assert "expected 155" in text
        assert "Veldkamp line count" in text
        assert text.strip().endswith("checks)")
        assert "FAIL" not in text

    def test_json_rendering(self, report):
        payload = json.loads(render_report_json(report))
        assert payload["overall"] is True
        assert len(payload["checks"]) == len(report.checks)

    def test_injected_fault_is_detected(self, w2_sym):
        broken = PointLineGeometry(15, w2_sym.lines[:-1], w2_sym.labels)
        damaged = build_verification_report(quadrangle=broken)
        assert not damaged.overall
        order_check = next(c for c in damaged.checks if c.name == "quadrangle order")
        assert not order_check.passed
        assert "unique-transversal" in str(order_check.actual)

    def test_injected_fault_exit_status(self, w2_sym, capsys, tmp_path):
        broken = PointLineGeometry(15, w2_sym.lines[:-1], w2_sym.labels)
        status = cmd_verify("text", None, quadrangle=broken)
        capsys.readouterr()
        assert status == 1

    def test_verify_writes_output_file(self, tmp_path, capsys):
        out = tmp_path / "report.json"
        status = cmd_verify("json", str(out))
        stdout = capsys.readouterr().out
        assert status == 0
        assert out.read_text(encoding="utf-8") == stdout


class TestCensus:
    def test_rows(self, bundle):
        rows = census_rows(bundle.space)
        assert rows == [
            ("Single Point", 1, 0, 2, 15),
            ("Collinear Triple", 3, 0, 0, 15),
            ("Unicentric Triad", 1, 1, 1, 60),
            ("Tricentric Triad", 3, 0, 0, 20),
            ("Pentad", 1, 2, 0, 45),
        ]

    def test_text_total(self, bundle):
        text = render_census_text(bundle.space)
        assert "155" in text
        assert "Unicentric Triad" in text

    def test_csv_matches_rows(self, bundle):
        lines = render_census_csv(bundle.space).strip().split("\n")
        assert lines[0] == "core_set_type,perp_sets,grids,ovoids,lines"
        assert lines[1] == "Single Point,1,0,2,15"
        assert lines[5] == "Pentad,1,2,0,45"


class TestExport:
    def test_json_round_trip(self, bundle):
        exported = model_to_dict(bundle)
        rebuilt = bundle_from_dict(json.loads(json.dumps(exported)))
        assert model_to_dict(rebuilt) == exported

    def test_json_sections(self, bundle):
        data = model_to_dict(bundle)
        assert len(data["points"]) == 15
        assert len(data["lines"]) == 15
        assert len(data["hyperplanes"]) == 31
        assert len(data["veldkamp_lines"]) == 155
        assert len(data["functionals"]) == 31
        assert [row["count"] for row in data["census"]] == [15, 15, 60, 20, 45]

    def test_functionals_nonzero_and_distinct(self, bundle):
        masks = [entry["mask"] for entry in model_to_dict(bundle)["functionals"]]
        assert sorted(masks) == list(range(1, 32))

    def test_dot_counts(self, bundle):
        dot = render_dot(bundle)
        lines = dot.split("\n")
        point_nodes = [l for l in lines if l.strip().startswith("p") and "[label" in l]
        collinearity_edges = [l for l in lines if "p" in l and " -- " in l and "h" not in l]
        hyperplane_nodes = [l for l in lines if l.strip().startswith("h") and "[label" in l]
        incidence_edges = [l for l in lines if " -- v" in l]
        assert len(point_nodes) == 15
        assert len(collinearity_edges) == 45
        assert len(hyperplane_nodes) == 31
        assert len(incidence_edges) == 465

    def test_rendered_json_is_stable(self, bundle):
        assert render_model_json(bundle) == render_model_json(build_model_bundle())

    def test_schema_checked_on_load(self, bundle):
        data = model_to_dict(bundle)
        data["schema"] = "something-else"
        with pytest.raises(ValueError):
            bundle_from_dict(data)


class TestMermin:
    def test_full_output(self, bundle):
        text = render_mermin(bundle)
        assert text.count("grid ") == 10
        assert text.count("product -1") == 10
        assert "observed minus-sign distribution" in text

    def test_quiet_output(self, bundle):
        text = render_mermin(bundle, quiet=True)
        lines = [l for l in text.strip().split("\n") if l.startswith("grid ")]
        assert len(lines) == 10
        assert all(l.endswith("-1") for l in lines)


class TestMainEntry:
    def test_verify_exits_zero(self, capsys):
        assert main(["verify"]) == 0
        out = capsys.readouterr().out
        assert "overall: PASS" in out

    def test_verify_json(self, capsys):
        assert main(["verify", "--format", "json"]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["overall"] is True

    def test_table1(self, capsys):
        assert main(["table1"]) == 0
        assert "Pentad" in capsys.readouterr().out

    def test_table1_csv_equals_export_csv(self, capsys, tmp_path):
        assert main(["table1", "--format", "csv"]) == 0
        stdout = capsys.readouterr().out
        target = tmp_path / "census.csv"
        assert main(["export", "--format", "csv", "--output", str(target)]) == 0
        assert target.read_text(encoding="utf-8") == stdout

    def test_export_json_and_reload(self, tmp_path):
        target = tmp_path / "model.json"
        assert main(["export", "--format", "json", "--output", str(target)]) == 0
        data = json.loads(target.read_text(encoding="utf-8"))
        rebuilt = bundle_from_dict(data)
        assert model_to_dict(rebuilt) == data

    def test_export_dot(self, tmp_path):
        target = tmp_path / "graphs.dot"
        assert main(["export", "--format", "dot", "--output", str(target)]) == 0
        text = target.read_text(encoding="utf-8")
        assert "graph collinearity {" in text
        assert "graph veldkamp_incidence {" in text

    def test_mermin(self, capsys):
        assert main(["mermin", "--quiet"]) == 0
        assert capsys.readouterr().out.count("six-sign product -1") == 10

    def test_unknown_format_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["export", "--format", "yaml", "--output", "x"])
        assert exc.value.code == 2

    def test_missing_command_is_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main([])
        assert exc.value.code == 2

    def test_unwritable_output_is_usage_error(self, capsys):
        status = main(["export", "--format", "json",
                       "--output", "/nonexistent-directory/model.json"])
        assert status == 2
        assert "cannot write" in capsys.readouterr().err
