"""Exact deformation theory of DG-Lie algebras over Q."""

import json
from dataclasses import dataclass, field

from . import _core
from ._core import (
    DglakitError,
    builtin_fixture_names,
    check_axioms,
    cohomology_dims,
    emit_fixture,
    fnv1a_hex,
    kuranishi,
    normalize_fixture,
)

__all__ = [
    "CommandResult",
    "DglakitError",
    "builtin_fixture_names",
    "check_axioms",
    "cohomology_dims",
    "emit_fixture",
    "error_kind",
    "fnv1a_hex",
    "kuranishi",
    "normalize_fixture",
    "run",
]


@dataclass(frozen=True)
class CommandResult:
    exit_code: int
    text: str
    report: dict = field(default_factory=dict)


def run(*args: str) -> CommandResult:
    """Run a CLI command in-process, e.g. run("dgla", "check", "heisenberg")."""
    code, report, text = _core.run_command([str(a) for a in args])
    return CommandResult(code, text, json.loads(report))


def error_kind(exc: DglakitError) -> str:
    """The error kind name, e.g. "SchemaViolation"."""
    return str(exc).split(":", 1)[0]
