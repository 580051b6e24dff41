"""On-disk result cache keyed by the canonical form of a job."""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from pathlib import Path

from cayleyspec.io import atomic_write

COMMANDS = ("cayley", "arrangement", "charset", "verify", "scan")
POLICIES = ("use", "refresh", "off")


@dataclass(frozen=True)
class JobDescriptor:
    command: str
    parameters: dict = field(default_factory=dict)
    output_format: str = ""
    cache_policy: str = "use"

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.cache_policy not in POLICIES:
            raise ValueError(f"unknown cache policy {self.cache_policy!r}")

    def canonical(self) -> str:
        # output path and cache policy do not change the artifact
        return json.dumps(
            {"command": self.command, "parameters": self.parameters, "format": self.output_format},
            sort_keys=True,
            separators=(",", ":"),
        )

    def key(self) -> str:
        return hashlib.sha256(self.canonical().encode()).hexdigest()


def cache_dir() -> Path:
    return Path(os.environ.get("SPECTRA_CACHE_DIR", ".spectra-cache"))


def load(job: JobDescriptor) -> tuple[int, str] | None:
    path = cache_dir() / f"{job.key()}.json"
    if job.cache_policy != "use" or not path.exists():
        return None
    try:
        entry = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if entry.get("job") != job.canonical():
        return None
    return entry["exit_code"], entry["content"]


def store(job: JobDescriptor, exit_code: int, content: str) -> None:
    if job.cache_policy == "off":
        return
    entry = {"job": job.canonical(), "exit_code": exit_code, "content": content}
    atomic_write(cache_dir() / f"{job.key()}.json", json.dumps(entry))
