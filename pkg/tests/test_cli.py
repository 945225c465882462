import json
import os

import pytest

from ktwebs.cli import (
    EXIT_BAD_INPUT,
    EXIT_NOT_CHARACTERISTIC,
    EXIT_OK,
    EXIT_VERIFY_FAILED,
    build_report,
    loads_exact,
    main,
    parse_record,
    report_to_ktparams,
)
from ktwebs.core import MetricSignature, ktparams
from fractions import Fraction

E1_JSON = '{"metric":"euclidean","A":0,"B":0,"C":1,"alpha":0,"beta":0,"gamma":1}'
M10_JSON = '{"metric":"minkowski","A":0,"B":0,"C":0,"alpha":1,"beta":1,"gamma":0}'
M6_JSON = '{"metric":"minkowski","gamma":1,"id":"polar"}'
M13_JSON = '{"metric":"minkowski","A":1,"B":1,"C":1}'
ZERO_JSON = '{"metric":"euclidean"}'


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsing:
    def test_exact_decimal_parsing(self):
        record = loads_exact('{"metric":"euclidean","A":0.1,"gamma":"2/3"}')
        _, k = parse_record(record)
        assert k.A == Fraction(1, 10)
        assert k.gamma == Fraction(2, 3)

    def test_unknown_key_rejected(self):
        from ktwebs.cli import InputError

        with pytest.raises(InputError):
            parse_record({"metric": "euclidean", "Alpha": 1})

    def test_missing_metric_rejected(self):
        from ktwebs.cli import InputError

        with pytest.raises(InputError):
            parse_record({"A": 1})

    def test_default_metric(self):
        _, k = parse_record({"A": 1}, default_metric="minkowski")
        assert k.signature is MetricSignature.MINKOWSKI


class TestClassifyCommand:
    def test_e1(self, capsys):
        code, out, _ = run(capsys, ["classify", "--tensor", E1_JSON])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["class"] == "E1"
        assert report["invariants"] == {"gamma": "1", "delta": "4"}
        assert report["rank"] == 6

    def test_m10_not_characteristic(self, capsys):
        code, out, _ = run(capsys, ["classify", "--tensor", M10_JSON])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["class"] == "M10"
        assert report["characteristic"] is False

    def test_zero_tensor(self, capsys):
        code, out, _ = run(capsys, ["classify", "--tensor", ZERO_JSON])
        assert code == EXIT_OK
        report = json.loads(out)
        assert report["class"] == "E5"
        assert report["is_zero"] is True

    def test_invalid_json(self, capsys):
        code, _, err = run(capsys, ["classify", "--tensor", "{not json"])
        assert code == EXIT_BAD_INPUT
        assert "error" in err

    def test_bad_metric(self, capsys):
        code, _, err = run(capsys, ["classify", "--tensor", '{"metric":"galilean"}'])
        assert code == EXIT_BAD_INPUT

    def test_file_input(self, capsys, tmp_path):
        path = tmp_path / "tensor.json"
        path.write_text(E1_JSON)
        code, out, _ = run(capsys, ["classify", "--tensor", str(path)])
        assert code == EXIT_OK
        assert json.loads(out)["class"] == "E1"

    def test_missing_file(self, capsys):
        code, _, err = run(capsys, ["classify", "--tensor", "/no/such/file.json"])
        assert code == EXIT_BAD_INPUT


class TestRoundTrip:
    def test_report_round_trips_losslessly(self):
        k = ktparams(
            MetricSignature.MINKOWSKI,
            Fraction(1, 10), "2/7", -3, 0, Fraction(5, 2), 1,
        )
        report = build_report("x", k)
        wire = json.loads(json.dumps(report))
        assert wire == report
        assert report_to_ktparams(wire) == k


class TestBatchCommand:
    def test_batch_order_and_error_isolation(self, capsys, tmp_path):
        lines = [
            json.dumps({"metric": "euclidean", "gamma": 1, "C": 1, "id": "a"}),
            "{broken",
            json.dumps({"metric": "minkowski", "gamma": 1, "id": "b"}),
        ]
        path = tmp_path / "batch.ndjson"
        path.write_text("\n".join(lines) + "\n")
        code, out, _ = run(capsys, ["batch", "--tensor", str(path)])
        assert code == EXIT_BAD_INPUT  # one record failed
        rows = [json.loads(line) for line in out.splitlines()]
        assert len(rows) == 3
        assert rows[0]["id"] == "a" and rows[0]["class"] == "E1"
        assert "error" in rows[1]
        assert rows[2]["id"] == "b" and rows[2]["class"] == "M6"

    def test_clean_batch_exits_zero(self, capsys, tmp_path):
        path = tmp_path / "batch.ndjson"
        path.write_text(E1_JSON + "\n" + M6_JSON + "\n")
        code, out, _ = run(capsys, ["batch", "--tensor", str(path)])
        assert code == EXIT_OK
        assert len(out.splitlines()) == 2


class TestRankAndInvariants:
    def test_rank(self, capsys):
        code, out, _ = run(capsys, ["rank", "--tensor", M13_JSON])
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["rank"] == 2 and row["expected_rank"] == 2

    def test_invariants(self, capsys):
        code, out, _ = run(capsys, ["invariants", "--tensor", M6_JSON])
        assert code == EXIT_OK
        row = json.loads(out)
        assert row["invariants"]["z_plus"] == "0"
        assert row["invariants"]["gamma"] == "1"


class TestWebCommand:
    def test_renders_svg(self, capsys, tmp_path):
        out_path = tmp_path / "polar.svg"
        code, _, _ = run(
            capsys,
            ["web", "--tensor", M6_JSON, "--out", str(out_path), "--seeds", "4"],
        )
        assert code == EXIT_OK
        data = out_path.read_bytes()
        assert data.startswith(b"<?xml") and b"</svg>" in data

    def test_non_characteristic_exit_and_no_partial_file(self, capsys, tmp_path):
        out_path = tmp_path / "none.svg"
        code, _, err = run(
            capsys, ["web", "--tensor", M13_JSON, "--out", str(out_path)]
        )
        assert code == EXIT_NOT_CHARACTERISTIC
        assert "M13" in err
        assert not out_path.exists()
        assert not list(tmp_path.glob("*.tmp"))

    def test_invalid_json_exit(self, capsys, tmp_path):
        code, _, _ = run(
            capsys, ["web", "--tensor", "{oops", "--out", str(tmp_path / "x.svg")]
        )
        assert code == EXIT_BAD_INPUT

    def test_bad_box(self, capsys, tmp_path):
        code, _, err = run(
            capsys,
            ["web", "--tensor", M6_JSON, "--out", str(tmp_path / "x.svg"),
             "--box", "3,-3,0,1"],
        )
        assert code == EXIT_BAD_INPUT


class TestVerifyCommand:
    def test_skip_fuzz(self, capsys):
        code, out, _ = run(capsys, ["verify", "--trials", "0"])
        assert code == EXIT_OK
        assert "orbit_invariance_fuzz" in out

    def test_small_fuzz(self, capsys):
        code, out, _ = run(capsys, ["verify", "--trials", "30", "--seed", "5"])
        assert code == EXIT_OK
        summary = json.loads(out.splitlines()[-1])
        assert summary["ok"] is True

    def test_negative_control(self, capsys):
        code, out, _ = run(capsys, ["verify", "--trials", "0", "--inject-bad-generator"])
        assert code == EXIT_VERIFY_FAILED


class TestAtlasCommand:
    def test_counts_and_self_classification(self, capsys):
        code, out, _ = run(capsys, ["atlas"])
        assert code == EXIT_OK
        entries = json.loads(out)
        by_label = {}
        for e in entries:
            by_label.setdefault(e["label"], []).append(e)
        assert len(by_label["E4"]) == 3
        assert len(by_label["M5"]) == 2
        from ktwebs.classify import classify_label

        for e in entries:
            _, k = parse_record({"metric": e["metric"], **e["params"]})
            assert classify_label(k) == e["label"]


class TestReportCommand:
    def test_writes_csv_and_figures(self, capsys, tmp_path):
        path = tmp_path / "batch.ndjson"
        path.write_text(M6_JSON + "\n" + M13_JSON + "\n")
        outdir = tmp_path / "out"
        code, out, _ = run(
            capsys,
            ["report", "--tensor", str(path), "--outdir", str(outdir), "--seeds", "4"],
        )
        assert code == EXIT_OK
        csv_path = outdir / "reports.csv"
        assert csv_path.exists()
        content = csv_path.read_text()
        assert "M6" in content and "M13" in content
        assert (outdir / "polar_web.png").exists()
        # the non-characteristic record gets no figure
        assert len(list(outdir.glob("*.png"))) == 1
