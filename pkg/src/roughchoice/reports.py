"""Verdicts, report envelopes and canonical space encodings."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from typing import Any, Optional

TOOL_VERSION = "0.1.0"


@dataclass(frozen=True)
class AuditVerdict:
    """Outcome of one audited claim.

    status is "verified", "refuted" or "vacuous"; a refutation always
    carries a replayable counterexample.
    """

    claim: str
    scope: str
    status: str
    counterexample: Optional[dict] = None
    notes: Optional[str] = None

    def __post_init__(self):
        if self.status not in ("verified", "refuted", "vacuous"):
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == "refuted" and self.counterexample is None:
            raise ValueError("a refutation requires a counterexample")

    def to_dict(self) -> dict:
        d: dict[str, Any] = {
            "claim": self.claim,
            "scope": self.scope,
            "status": self.status,
        }
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.notes:
            d["notes"] = self.notes
        return d


def canonical_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))


def encode_space(space) -> dict:
    """Canonical encoding of a space: size plus sorted off-diagonal pairs."""
    doc = {"n": space.n, "pairs": [list(p) for p in space.pairs()]}
    if space.labels is not None:
        doc["labels"] = list(space.labels)
    return doc


def decode_space(doc: dict):
    from .spaces import build_space

    return build_space(
        doc["n"],
        [tuple(p) for p in doc["pairs"]],
        symmetrize=True,
        labels=doc.get("labels"),
    )


def space_digest(space) -> str:
    return hashlib.sha256(canonical_json(encode_space(space)).encode()).hexdigest()


def envelope(
    command: str,
    payload: Any,
    space=None,
    seed: Optional[int] = None,
) -> dict:
    """Wrap a command result with enough provenance to replay it."""
    env: dict[str, Any] = {
        "tool_version": TOOL_VERSION,
        "command": command,
        "payload": payload,
    }
    if space is not None:
        env["space_digest"] = space_digest(space)
        env["space"] = encode_space(space)
    if seed is not None:
        env["seed"] = seed
    return env
