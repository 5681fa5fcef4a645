"""Benchmark run reports.

The machine-readable form is a flat ``key=value`` file, one entry per line,
in a fixed order. Lines starting with ``seconds.`` hold wall-clock timings and
are the only entries allowed to differ between two runs with the same flags.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

TIMING_PREFIX = "seconds."


@dataclass
class RunReport:
    config: dict[str, str] = field(default_factory=dict)
    methods: list[str] = field(default_factory=list)
    truth: list[int] = field(default_factory=list)
    accuracy: dict[str, float] = field(default_factory=dict)
    status: dict[str, str] = field(default_factory=dict)
    seconds: dict[str, float] = field(default_factory=dict)
    predictions: dict[str, list[int]] = field(default_factory=dict)
    rmcs_selected: list[list[str]] = field(default_factory=list)

    def record(self, method: str, predictions, seconds: float) -> None:
        preds = [int(p) for p in predictions]
        if len(preds) != len(self.truth):
            raise ValueError(f"{method}: {len(preds)} predictions for {len(self.truth)} test objects")
        self.methods.append(method)
        self.predictions[method] = preds
        self.accuracy[method] = sum(p == t for p, t in zip(preds, self.truth)) / len(self.truth)
        self.status[method] = "ok"
        self.seconds[method] = seconds

    def record_failure(self, method: str, error: Exception, seconds: float) -> None:
        self.methods.append(method)
        self.status[method] = "failed: " + " ".join(f"{type(error).__name__}: {error}".split())
        self.seconds[method] = seconds

    def to_text(self) -> str:
        out = [f"config.{k}={v}" for k, v in self.config.items()]
        out.append("methods=" + ",".join(self.methods))
        out.append(f"n_test={len(self.truth)}")
        out.append("truth=" + ",".join(map(str, self.truth)))
        for m in self.methods:
            out.append(f"status.{m}={self.status[m]}")
            if m in self.accuracy:
                out.append(f"accuracy.{m}={self.accuracy[m]!r}")
                out.append(f"predictions.{m}=" + ",".join(map(str, self.predictions[m])))
            out.append(f"{TIMING_PREFIX}{m}={self.seconds[m]!r}")
        for i, names in enumerate(self.rmcs_selected):
            out.append(f"rmcs.selected.{i}=" + "|".join(names))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "RunReport":
        rep = cls()
        selected: dict[int, list[str]] = {}

        def ints(v: str) -> list[int]:
            return [int(t) for t in v.split(",")] if v else []

        for line in text.splitlines():
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"malformed report line {line!r}")
            head, _, rest = key.partition(".")
            if head == "config":
                rep.config[rest] = value
            elif key == "methods":
                rep.methods = value.split(",") if value else []
            elif key == "truth":
                rep.truth = ints(value)
            elif key == "n_test":
                continue
            elif head == "status":
                rep.status[rest] = value
            elif head == "accuracy":
                rep.accuracy[rest] = float(value)
            elif head == "predictions":
                rep.predictions[rest] = ints(value)
            elif key.startswith(TIMING_PREFIX):
                rep.seconds[key[len(TIMING_PREFIX):]] = float(value)
            elif key.startswith("rmcs.selected."):
                selected[int(key.rsplit(".", 1)[1])] = value.split("|") if value else []
            else:
                raise ValueError(f"unknown report key {key!r}")
        rep.rmcs_selected = [selected[i] for i in sorted(selected)]
        return rep

    def write(self, path) -> None:
        Path(path).write_text(self.to_text())

    def table(self) -> str:
        width = max([len("method")] + [len(m) for m in self.methods])
        lines = [f"{'method':<{width}}  accuracy  seconds  status"]
        for m in self.methods:
            acc = f"{self.accuracy[m]:.4f}" if m in self.accuracy else "-"
            lines.append(f"{m:<{width}}  {acc:>8}  {self.seconds[m]:7.3f}  {self.status[m]}")
        return "\n".join(lines) + "\n"


def strip_timings(text: str) -> str:
    return "".join(line + "\n" for line in text.splitlines() if not line.startswith(TIMING_PREFIX))
