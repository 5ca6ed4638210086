import json
import xml.etree.ElementTree as ET

import numpy as np
import pytest

from rindler_corr.exception import InvalidParameterError, RindlerCorrError
from rindler_corr.model import CorrelationRecord, SweepResult
from rindler_corr.sweep import (
    LineSeries,
    chart_specs,
    emit_csv,
    emit_plots,
    format_csv,
    read_csv,
    render_line_chart,
    write_json,
)
from rindler_corr.utils.helpers import schema_comment

SVG_NS = "{http://www.w3.org/2000/svg}"


# ── CSV ──────────────────────────────────────────────────────────────────


class TestCsv:
    def test_layout(self, synthetic_result):
        lines = format_csv(synthetic_result).split("\n")
        assert lines[0] == schema_comment()
        assert lines[1] == ",".join(CorrelationRecord.FIELD_NAMES)
        assert len(lines) == 2 + len(synthetic_result) + 1
        assert lines[-1] == ""

    def test_rows_use_fixed_precision(self, make_record):
        result = SweepResult((make_record(1 / 3),))
        row = format_csv(result).splitlines()[2].split(",")
        assert row[0] == "0.333333333333"
        assert row[CorrelationRecord.FIELD_NAMES.index("N_used")] == "13"

    def test_output_is_deterministic(self, synthetic_result):
        assert format_csv(synthetic_result) == format_csv(synthetic_result)

    def test_emit_and_read_back(self, synthetic_result, tmp_path):
        path = emit_csv(synthetic_result, tmp_path / "nested" / "correlations.csv")
        assert b"\r" not in path.read_bytes()
        restored = read_csv(path)
        assert len(restored) == len(synthetic_result)
        for name in ("alpha", "I_AR", "J_AAntiR", "EF_RAntiR"):
            np.testing.assert_allclose(
                restored.column(name), synthetic_result.column(name), rtol=1e-11
            )

    def test_read_foreign_csv(self, tmp_path):
        path = tmp_path / "other.csv"
        path.write_text("a,b\n1,2\n", encoding="utf-8")
        with pytest.raises(RindlerCorrError):
            read_csv(path)


class TestJson:
    def test_record(self, make_record):
        record = make_record(0.5)
        data = json.loads(write_json(record))
        assert list(data) == list(CorrelationRecord.FIELD_NAMES)
        assert data["N_used"] == 15

    def test_mapping_to_file(self, tmp_path):
        path = tmp_path / "out" / "metadata.json"
        text = write_json({"tool_version": "0.1.0", "note": "α"}, path)
        assert path.read_text(encoding="utf-8") == text
        assert "α" in text
        assert text.endswith("}\n")


# ── SVG ──────────────────────────────────────────────────────────────────


class TestCharts:
    def test_six_standard_charts(self, synthetic_result, tmp_path):
        paths = emit_plots(synthetic_result, tmp_path / "plots")
        counts = {}
        for path in paths:
            root = ET.parse(path).getroot()
            assert root.tag == f"{SVG_NS}svg"
            counts[path.stem] = len(root.findall(f".//{SVG_NS}polyline"))
            assert "squeezing parameter" in path.read_text(encoding="utf-8")
        assert counts == {
            "entropies": 3,
            "mutual_information": 3,
            "correlations_AR": 3,
            "correlations_AAntiR": 3,
            "correlations_compared": 6,
            "entanglement_of_formation": 1,
        }

    def test_compared_chart_styles(self, synthetic_result):
        _, _, series = chart_specs(synthetic_result)["correlations_compared"]
        assert len({s.color for s in series}) == 2
        assert [s.dash for s in series[:3]] == [s.dash for s in series[3:]]

    def test_summed_information_curve(self, synthetic_result):
        _, _, series = chart_specs(synthetic_result)["mutual_information"]
        np.testing.assert_allclose(
            series[2].values,
            synthetic_result.column("I_AR") + synthetic_result.column("I_AAntiR"),
        )

    def test_labels_are_escaped(self):
        svg = render_line_chart(
            "a < b", [0.0, 1.0], [LineSeries("x & y", np.array([1.0, 2.0]))], "bits"
        )
        assert "a &lt; b" in svg
        assert "x &amp; y" in svg
        ET.fromstring(svg.encode("utf-8"))

    def test_flat_curve(self):
        svg = render_line_chart("flat", [0.0, 1.0], [LineSeries("zero", np.zeros(2))], "bits")
        ET.fromstring(svg.encode("utf-8"))

    @pytest.mark.parametrize(
        "x,series",
        [
            ([0.0, 1.0], []),
            ([0.0], [LineSeries("one", np.array([1.0]))]),
            ([0.0, 1.0], [LineSeries("short", np.array([1.0, 2.0, 3.0]))]),
        ],
    )
    def test_invalid_chart(self, x, series):
        with pytest.raises(InvalidParameterError):
            render_line_chart("bad", x, series, "bits")
