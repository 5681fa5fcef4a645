import pytest

from rmcs.report import RunReport, strip_timings


def sample():
    rep = RunReport(config={"k": "3", "seed": "0"}, truth=[0, 1, 1, 2])
    rep.record("knn", [0, 1, 0, 2], 0.5)
    rep.record("rmcs", [0, 1, 1, 2], 1.25)
    rep.record_failure("adaboost", ValueError("bad\nthing"), 0.01)
    rep.rmcs_selected = [["knn"], ["knn", "naive_bayes"], [], ["naive_bayes"]]
    return rep


def test_accuracy_is_recount():
    rep = sample()
    assert rep.accuracy == {"knn": 0.75, "rmcs": 1.0}
    assert "adaboost" not in rep.accuracy and rep.status["adaboost"].startswith("failed")


def test_round_trip():
    rep = sample()
    back = RunReport.from_text(rep.to_text())
    assert back == rep
    assert back.to_text() == rep.to_text()


def test_one_metric_per_line_and_timing_strip():
    text = sample().to_text()
    assert "accuracy.knn=0.75\n" in text
    stripped = strip_timings(text)
    assert "seconds." not in stripped
    assert stripped.count("\n") == text.count("\n") - 3


def test_record_length_mismatch():
    rep = RunReport(truth=[0, 1])
    with pytest.raises(ValueError):
        rep.record("x", [0], 0.0)


def test_malformed_text():
    with pytest.raises(ValueError):
        RunReport.from_text("no equals sign\n")
    with pytest.raises(ValueError):
        RunReport.from_text("mystery=1\n")


def test_table_lists_methods():
    table = sample().table()
    assert "rmcs" in table and "1.0000" in table and "failed" in table
