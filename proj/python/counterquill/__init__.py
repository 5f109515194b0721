"""Python access to the counterquill session service and study statistics."""

import json

from ._core import (
    Error,
    assign_corpus,
    condition_order,
    grade_quiz,
    incomplete_beta,
    lexically_equivalent,
    paired_t,
    parse_yes_no,
    percent_change,
    quiz_accuracy,
    seed_draft,
    significance_stars,
    splice,
    student_t_cdf,
    student_t_quantile,
    welch_t,
)
from ._core import _Service

__all__ = [
    "ApiError",
    "Error",
    "Service",
    "assign_corpus",
    "condition_order",
    "grade_quiz",
    "incomplete_beta",
    "lexically_equivalent",
    "paired_t",
    "parse_yes_no",
    "percent_change",
    "quiz_accuracy",
    "seed_draft",
    "significance_stars",
    "splice",
    "student_t_cdf",
    "student_t_quantile",
    "welch_t",
]


class ApiError(Exception):
    """A non-2xx answer from the service. `code` is the error code string."""

    def __init__(self, status, code, message):
        super().__init__(f"{status} {code}: {message}")
        self.status = status
        self.code = code
        self.message = message


class Service:
    """A service backed by the mock provider and an event log in `data_dir`.

    Reopening the same directory replays the log.
    """

    def __init__(self, data_dir, mock_seed=0, attempt_cap=3, corpus_path="", assignment_seed=0):
        self._svc = _Service(str(data_dir), mock_seed, attempt_cap, str(corpus_path), assignment_seed)

    def request(self, method, path, body=None, query=None):
        """Returns decoded JSON, or the raw text for CSV responses."""
        payload = "" if body is None else json.dumps(body)
        status, text, content_type = self._svc.request(method, path, payload, query or {})
        data = json.loads(text) if content_type.startswith("application/json") and text else text
        if status >= 300:
            raise ApiError(status, data.get("code"), data.get("message"))
        return data

    def get(self, path):
        return self.request("GET", path)

    def post(self, path, body=None):
        return self.request("POST", path, {} if body is None else body)

    def create_session(self, participant_id, condition, instance_id=None):
        body = {"participant_id": participant_id, "condition": condition}
        if instance_id is not None:
            body["instance_id"] = instance_id
        return self.post("/sessions", body)

    def export_csv(self):
        return self.request("GET", "/study/export")

    def export_rows(self):
        return self.request("GET", "/study/export", query={"format": "json"})

    def flush(self):
        self._svc.flush()
