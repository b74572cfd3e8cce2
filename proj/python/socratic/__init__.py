"""Python access to the socratic debugging tutor core."""

import json as _json

from . import _core
from ._core import Error, parse_state, replays, side_by_side, success_rate

__all__ = [
    "Error",
    "aggregate_qualitative",
    "load_problems",
    "parse_state",
    "replays",
    "run_mock",
    "side_by_side",
    "success_rate",
    "validate_problems",
]


def load_problems(path):
    return _json.loads(_core.load_problems(str(path)))


def validate_problems(path):
    return _json.loads(_core.validate_problems(str(path)))


def run_mock(problems_path, problem_id, mock_path, student_path, config=None):
    """Run one session offline and return the transcript as a dict."""
    text = _core.run_mock(str(problems_path), problem_id, str(mock_path), str(student_path),
                          _json.dumps(config) if config else "")
    return _json.loads(text)


def aggregate_qualitative(annotations, counts):
    return _json.loads(_core.aggregate_qualitative(_json.dumps(annotations), dict(counts)))
