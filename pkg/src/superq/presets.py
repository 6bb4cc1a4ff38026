"""Bundled worked examples, each with expected report fragments."""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources

from .pipeline import diff_expected, run_pipeline
from .problem import ProblemFile, build, parse_problem_data


class UnknownPreset(KeyError):
    pass


@dataclass
class Preset:
    name: str
    description: str
    problem: ProblemFile
    expected: dict
    raw_problem: dict


@dataclass
class PresetResult:
    preset: Preset
    report: dict
    diffs: list

    @property
    def ok(self) -> bool:
        return not self.diffs

    def to_dict(self) -> dict:
        return {"preset": self.preset.name, "ok": self.ok, "diffs": self.diffs,
                "report": self.report}


def _files():
    return resources.files("superq").joinpath("presets")


def list_presets() -> list:
    return sorted(p.name[:-5] for p in _files().iterdir() if p.name.endswith(".json"))


def load_preset(name: str) -> Preset:
    path = _files().joinpath(f"{name}.json")
    if not path.is_file():
        raise UnknownPreset(f"unknown preset {name!r}; known: {', '.join(list_presets())}")
    data = json.loads(path.read_text(encoding="utf-8"))
    problem = parse_problem_data(data["problem"], f"preset {name}")
    return Preset(data["name"], data.get("description", ""), problem, data["expected"],
                  data["problem"])


def run_preset(name: str) -> PresetResult:
    preset = load_preset(name)
    built = build(preset.problem, check_degree=preset.problem.options.check_degree)
    report = run_pipeline(built)
    return PresetResult(preset, report, diff_expected(report, preset.expected))
