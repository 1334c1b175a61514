"""JSON instance and schedule files with exact numbers.

Numbers are written as bare integers or ``"p/q"`` strings.  On input, decimal
strings such as ``"2.25"`` and JSON floats are also accepted and converted
exactly from their decimal text.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .model import CapacityError, Instance, Job, Schedule, makespan

INSTANCE_FIELDS = {"omega", "jobs"}
JOB_FIELDS = {"id", "a", "b"}
SCHEDULE_FIELDS = {"instance", "starts", "makespan"}
START_FIELDS = {"id", "s1", "s2"}


class ParseError(ValueError):
    pass


def encode_number(value: Fraction) -> int | str:
    value = Fraction(value)
    if value.denominator == 1:
        return value.numerator
    return f"{value.numerator}/{value.denominator}"


def decode_number(raw: Any, where: str = "value") -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (int, float, str)):
        raise ParseError(f"{where}: expected a number, got {raw!r}")
    try:
        return Fraction(repr(raw)) if isinstance(raw, float) else Fraction(raw)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"{where}: cannot read {raw!r} as an exact number ({exc})") from None


def _check_fields(obj: Any, allowed: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown fields {sorted(unknown)}")
    missing = allowed - set(obj)
    if missing:
        raise ParseError(f"{where}: missing fields {sorted(missing)}")


def _check_id(raw: Any, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (int, str)):
        raise ParseError(f"{where}: job id must be an integer or a string")
    return raw


def instance_to_dict(instance: Instance) -> dict:
    return {
        "omega": encode_number(instance.omega),
        "jobs": [{"id": j.id, "a": encode_number(j.a), "b": encode_number(j.b)} for j in instance.jobs],
    }


def instance_from_dict(data: Any) -> Instance:
    _check_fields(data, INSTANCE_FIELDS, "instance")
    if not isinstance(data["jobs"], list):
        raise ParseError("instance: jobs must be a list")
    jobs = []
    for k, raw in enumerate(data["jobs"]):
        where = f"jobs[{k}]"
        _check_fields(raw, JOB_FIELDS, where)
        a = decode_number(raw["a"], f"{where}.a")
        b = decode_number(raw["b"], f"{where}.b")
        try:
            jobs.append(Job(_check_id(raw["id"], where), a, b))
        except ValueError as exc:
            raise ParseError(f"{where}: {exc}") from None
    omega = decode_number(data["omega"], "omega")
    try:
        return Instance(tuple(jobs), omega)
    except CapacityError:
        raise
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def instance_digest(instance: Instance) -> str:
    text = json.dumps(instance_to_dict(instance), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def _read_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from None


def load_instance(path: str | Path) -> Instance:
    return instance_from_dict(_read_json(path))


def dump_instance(instance: Instance, path: str | Path | None = None) -> str:
    text = json.dumps(instance_to_dict(instance), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text


def schedule_to_dict(instance: Instance, schedule: Schedule, instance_path: str | None = None) -> dict:
    ref = {"sha256": instance_digest(instance)}
    if instance_path is not None:
        ref["path"] = str(instance_path)
    return {
        "instance": ref,
        "starts": [
            {"id": i, "s1": encode_number(s1), "s2": encode_number(s2)}
            for i, (s1, s2) in schedule.starts.items()
        ],
        "makespan": encode_number(makespan(instance, schedule)),
    }


def schedule_from_dict(data: Any, instance: Instance) -> Schedule:
    """Read a schedule and check that it belongs to ``instance`` and that its makespan is right."""
    _check_fields(data, SCHEDULE_FIELDS, "schedule")
    ref = data["instance"]
    if not isinstance(ref, dict) or not set(ref) <= {"path", "sha256"}:
        raise ParseError("schedule.instance: expected {path, sha256}")
    if "sha256" in ref and ref["sha256"] != instance_digest(instance):
        raise ParseError("schedule was produced for a different instance")
    if not isinstance(data["starts"], list):
        raise ParseError("schedule.starts must be a list")
    starts = {}
    for k, raw in enumerate(data["starts"]):
        where = f"starts[{k}]"
        _check_fields(raw, START_FIELDS, where)
        job_id = _check_id(raw["id"], where)
        if job_id in starts:
            raise ParseError(f"{where}: duplicate id {job_id!r}")
        starts[job_id] = (decode_number(raw["s1"], f"{where}.s1"), decode_number(raw["s2"], f"{where}.s2"))
    schedule = Schedule(starts)
    stated = decode_number(data["makespan"], "makespan")
    try:
        actual = makespan(instance, schedule)
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if stated != actual:
        raise ParseError(f"stated makespan {stated} differs from recomputed {actual}")
    return schedule


def load_schedule(path: str | Path, instance: Instance) -> Schedule:
    return schedule_from_dict(_read_json(path), instance)


def dump_schedule(instance: Instance, schedule: Schedule, path: str | Path | None = None,
                  instance_path: str | None = None) -> str:
    text = json.dumps(schedule_to_dict(instance, schedule, instance_path), indent=2) + "\n"
    if path is not None:
        Path(path).write_text(text)
    return text
