import json
import math

import pytest

from conftest import dataset_from_scores
from padfuse.dataset import SampleClass
from padfuse.errors import ParseError, ReportIOError, UnknownClassError, VersionMismatchError
from padfuse.fileio import (
    FORMAT_VERSION,
    ScenarioReport,
    canonical_json,
    decode_json,
    load_scores,
    parse_score_rows,
    read_report,
    report_to_json,
    save_scores,
    write_report,
)

INF = math.inf


def write_text(path, text):
    path.write_text(text, encoding="utf-8")
    return path


class TestScoreLoading:
    def test_three_line_file(self, tmp_path):
        path = write_text(tmp_path / "s.csv", (
            "klass,liveness_score,match_score\n"
            "genuine,0.8,0.9\n"
            "zero_effort,0.7,0.2\n"
            "presentation_attack,0.1,0.6\n"
        ))
        data = load_scores(path)
        assert len(data) == 3
        assert data.name == "s"
        assert data.count(SampleClass.GENUINE) == 1
        record = data.records[0]
        assert (record.klass, record.liveness_score, record.match_score) == (SampleClass.GENUINE, 0.8, 0.9)

    def test_unknown_class_rejected(self, tmp_path):
        path = write_text(tmp_path / "s.csv", (
            "klass,liveness_score,match_score\n"
            "genuine,0.8,0.9\n"
            "authorized_spoof,0.1,0.6\n"
        ))
        with pytest.raises(UnknownClassError) as err:
            load_scores(path)
        assert err.value.line == 3
        assert err.value.klass == "authorized_spoof"

    def test_non_numeric_score(self, tmp_path):
        path = write_text(tmp_path / "s.csv", (
            "klass,liveness_score,match_score\n"
            "genuine,high,0.9\n"
        ))
        with pytest.raises(ParseError) as err:
            load_scores(path)
        assert err.value.line == 2
        assert "liveness_score" in str(err.value)

    def test_non_finite_score(self, tmp_path):
        path = write_text(tmp_path / "s.csv", (
            "klass,liveness_score,match_score\n"
            "genuine,0.8,inf\n"
        ))
        with pytest.raises(ParseError):
            load_scores(path)

    def test_bad_header(self, tmp_path):
        path = write_text(tmp_path / "s.csv", "a,b,c\ngenuine,0.8,0.9\n")
        with pytest.raises(ParseError) as err:
            load_scores(path)
        assert err.value.line == 1

    def test_empty_file(self, tmp_path):
        path = write_text(tmp_path / "s.csv", "")
        with pytest.raises(ParseError):
            load_scores(path)

    def test_wrong_field_count(self):
        with pytest.raises(ParseError) as err:
            parse_score_rows([["klass", "liveness_score", "match_score"], ["genuine", "0.5"]])
        assert err.value.line == 2

    def test_save_load_round_trip(self, tmp_path, rng):
        data = dataset_from_scores(
            genuine=[(0.812345678901234, 0.9)],
            zero_effort=[(float(rng.normal()), float(rng.normal()))],
            attack=[(-1.5, 2.25)],
            name="rt",
        )
        path = tmp_path / "rt.csv"
        save_scores(data, path)
        loaded = load_scores(path)
        assert loaded.records == data.records  # exact float round-trip via repr


class TestReports:
    def populated(self):
        return ScenarioReport(
            kind="geer",
            inputs={"dataset": "demo", "w_grid": [0.0, 0.1], "w_hat": 0.2,
                    "class_counts": {"genuine": 10, "zero_effort": 10, "presentation_attack": 10}},
            outputs={
                "resolved_point": {"threshold": 0.3, "apcer": 0.25, "apcer_pct": 25.0,
                                   "bpcer": 0.2, "bpcer_pct": 20.0, "exact": True, "warning": None},
                "geer_sweeps": [
                    {"kind": "integrated", "w_grid": [0.0, 0.1], "geer_values": [0.2, 0.2]},
                    {"kind": "individual", "w_grid": [0.0, 0.1], "geer_values": [0.15, 0.185]},
                ],
                "w_star": {"crossing_kind": "crossing", "w_star": 1.0 / 7.0},
                "decision": "embed",
            },
        )

    def test_round_trip_equality(self, tmp_path):
        report = self.populated()
        path = tmp_path / "r.json"
        write_report(report, path)
        assert read_report(path) == report

    def test_empty_outputs_round_trip(self, tmp_path):
        report = ScenarioReport(kind="characteristics", inputs={}, outputs={})
        path = tmp_path / "r.json"
        write_report(report, path)
        assert read_report(path) == report

    def test_tampered_version(self, tmp_path):
        report = self.populated()
        path = tmp_path / "r.json"
        write_report(report, path)
        payload = json.loads(path.read_text())
        payload["format_version"] = 99
        path.write_text(json.dumps(payload))
        with pytest.raises(VersionMismatchError):
            read_report(path)

    def test_missing_file(self, tmp_path):
        with pytest.raises(ReportIOError):
            read_report(tmp_path / "nope.json")

    def test_malformed_json(self, tmp_path):
        path = write_text(tmp_path / "r.json", "{not json")
        with pytest.raises(ReportIOError):
            read_report(path)

    def test_serialization_is_canonical(self):
        report = self.populated()
        assert report_to_json(report) == report_to_json(report)
        # key order in the source dicts must not matter
        flipped = ScenarioReport(
            kind=report.kind,
            inputs=dict(reversed(list(report.inputs.items()))),
            outputs=dict(reversed(list(report.outputs.items()))),
        )
        assert report_to_json(flipped) == report_to_json(report)

    def test_infinite_thresholds_survive(self, tmp_path):
        report = ScenarioReport(
            kind="characteristics",
            inputs={"dataset": "x"},
            outputs={"pad_characteristic": {
                "thresholds": [-INF, 0.5, INF], "apcer": [1.0, 0.2, 0.0], "bpcer": [0.0, 0.1, 1.0],
            }},
        )
        path = tmp_path / "r.json"
        write_report(report, path)
        loaded = read_report(path)
        assert loaded == report
        assert loaded.outputs["pad_characteristic"]["thresholds"][0] == -INF
        # the wire form is standard JSON: json.loads with inf parsing disabled works
        raw = json.loads(path.read_text(), parse_constant=lambda c: pytest.fail(f"bare {c} in JSON"))
        assert raw["outputs"]["pad_characteristic"]["thresholds"][0] == "-Infinity"

    def test_canonical_json_helpers(self):
        payload = {"threshold": INF, "values": [1.0, 2.5]}
        text = canonical_json(payload)
        assert text.endswith("\n")
        assert decode_json(text) == payload
