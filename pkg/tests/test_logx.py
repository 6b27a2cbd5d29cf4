"""Purpose: verify logx helpers emit structured JSON events."""

import json
from pathlib import Path

import pytest
from loguru import logger

from schemas.adtree import IdsTier
from schemas.diagnostic import warning
from schemas.report import ActionKind
from utils import logx


@pytest.fixture
def records():
    captured = []
    sink_id = logger.add(lambda msg: captured.append(msg.record), level="DEBUG")
    yield captured
    logger.remove(sink_id)


def _payload(record):
    return json.loads(record["message"])


def test_event_payload_is_json(records):
    logx.event("scenario_applied", tree="T", scenario="s", changes=2)
    record = records[-1]
    assert record["level"].name == "INFO"
    assert _payload(record) == {"event": "scenario_applied", "tree": "T", "scenario": "s", "changes": 2}


def test_levels(records):
    logx.warn("custom", a=1)
    logx.error("custom", a=1)
    logx.debug("custom", a=1)
    assert [r["level"].name for r in records[-3:]] == ["WARNING", "ERROR", "DEBUG"]


def test_caller_is_reported(records):
    logx.event("custom")
    assert records[-1]["function"] == "test_caller_is_reported"


def test_missing_required_fields():
    with pytest.raises(KeyError):
        logx.debug("tree_evaluated", tree="T")


def test_values_are_coerced(records):
    logx.debug(
        "custom",
        kind=ActionKind.upgrade_ids,
        tier=IdsTier.minimal,
        path=Path("trees") / "cav.adt",
        ids={"d3", "d1"},
        diag=warning("W_NCAP", "too many"),
    )
    payload = _payload(records[-1])
    assert payload["kind"] == "upgrade-ids"
    assert payload["tier"] == "minimal"
    assert payload["path"] == str(Path("trees") / "cav.adt")
    assert payload["ids"] == ["d1", "d3"]
    assert payload["diag"]["code"] == "W_NCAP"


def test_timed_adds_elapsed_and_outcome(records):
    with logx.timed("command_finished", command="evaluate") as outcome:
        outcome["exit_code"] = 0
    record = records[-1]
    payload = _payload(record)
    assert payload["command"] == "evaluate"
    assert payload["exit_code"] == 0
    assert payload["elapsed_ms"] >= 0
    assert record["function"] == "test_timed_adds_elapsed_and_outcome"


def test_timed_logs_when_block_raises(records):
    with pytest.raises(RuntimeError):
        with logx.timed("custom", level="warning"):
            raise RuntimeError("boom")
    assert records[-1]["level"].name == "WARNING"
    assert "elapsed_ms" in _payload(records[-1])
