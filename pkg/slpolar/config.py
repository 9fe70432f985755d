"""Run configuration for the verifier."""

from __future__ import annotations

from dataclasses import dataclass
import logging
from pathlib import Path
from typing import Any

import voluptuous as vol

from .const import (
    ALL,
    ALL_CHECKS,
    CONF_BOUND,
    CONF_CHECKS,
    CONF_COMPOSITIONS,
    CONF_FORMAT,
    CONF_JOBS,
    CONF_OUTPUT,
    CONF_RANKS,
    CONF_SAMPLES,
    CONF_SEED,
    DEFAULT_BOUND,
    DEFAULT_FORMAT,
    DEFAULT_JOBS,
    DEFAULT_RANKS,
    DEFAULT_SAMPLES,
    DEFAULT_SEED,
    FORMAT_JSON,
    FORMAT_MARKDOWN,
    MAX_RANK,
    MAX_SEED,
    MIN_RANK,
)
from .exceptions import CompositionMismatchError, ConfigError
from .weyl import LeviComposition, compositions

_LOGGER = logging.getLogger(__name__)


def _composition(value: Any) -> LeviComposition:
    if isinstance(value, LeviComposition):
        return value
    try:
        return LeviComposition.parse(str(value))
    except CompositionMismatchError as err:
        raise vol.Invalid(str(err)) from err


def _checks(value: Any) -> tuple[str, ...]:
    values = [value] if isinstance(value, str) else list(value)
    if ALL in values:
        return ALL_CHECKS
    for check in values:
        if check not in ALL_CHECKS:
            raise vol.Invalid(f"unknown check {check!r}")
    return tuple(check for check in ALL_CHECKS if check in values)


def _unique_sorted(values: list[int]) -> tuple[int, ...]:
    return tuple(sorted(set(values)))


def _compositions_match_ranks(data: dict[str, Any]) -> dict[str, Any]:
    for levi in data[CONF_COMPOSITIONS] or ():
        if levi.n not in data[CONF_RANKS]:
            raise vol.Invalid(
                f"composition {levi} sums to {levi.n}, which is not a selected rank",
                path=[CONF_COMPOSITIONS],
            )
    return data


RUN_CONFIG_SCHEMA = vol.All(
    vol.Schema(
        {
            vol.Optional(CONF_RANKS, default=list(DEFAULT_RANKS)): vol.All(
                [vol.All(vol.Coerce(int), vol.Range(min=MIN_RANK, max=MAX_RANK))],
                vol.Length(min=1),
                _unique_sorted,
            ),
            vol.Optional(CONF_COMPOSITIONS, default=None): vol.Any(
                None, vol.All([_composition], vol.Length(min=1), tuple)
            ),
            vol.Optional(CONF_SAMPLES, default=DEFAULT_SAMPLES): vol.All(vol.Coerce(int), vol.Range(min=1)),
            vol.Optional(CONF_SEED, default=DEFAULT_SEED): vol.All(vol.Coerce(int), vol.Range(min=0, max=MAX_SEED)),
            vol.Optional(CONF_BOUND, default=DEFAULT_BOUND): vol.All(vol.Coerce(int), vol.Range(min=1)),
            vol.Optional(CONF_CHECKS, default=[ALL]): _checks,
            vol.Optional(CONF_OUTPUT, default=None): vol.Any(None, vol.Coerce(Path)),
            vol.Optional(CONF_FORMAT, default=DEFAULT_FORMAT): vol.In([FORMAT_JSON, FORMAT_MARKDOWN]),
            vol.Optional(CONF_JOBS, default=DEFAULT_JOBS): vol.All(vol.Coerce(int), vol.Range(min=1)),
        }
    ),
    _compositions_match_ranks,
)


@dataclass(frozen=True)
class RunConfig:
    """A validated run: which checks, over which grid, with which randomness."""

    ranks: tuple[int, ...] = DEFAULT_RANKS
    compositions: tuple[LeviComposition, ...] | None = None
    samples: int = DEFAULT_SAMPLES
    seed: int = DEFAULT_SEED
    bound: int = DEFAULT_BOUND
    checks: tuple[str, ...] = ALL_CHECKS
    output_path: Path | None = None
    format: str = DEFAULT_FORMAT
    jobs: int = DEFAULT_JOBS

    @classmethod
    def from_input(cls, user_input: dict[str, Any]) -> RunConfig:
        """Validate raw options; raises ConfigError naming the offending key."""
        try:
            data = RUN_CONFIG_SCHEMA(user_input)
        except vol.Invalid as err:
            key = str(err.path[0]) if err.path else None
            raise ConfigError(err.msg if key is None else f"{key}: {err.msg}") from err
        return cls(**data)

    def compositions_for(self, n: int) -> tuple[LeviComposition, ...]:
        """The Levi compositions of the grid at rank n."""
        if self.compositions is None:
            return compositions(n)
        return tuple(levi for levi in self.compositions if levi.n == n)

    def grid(self) -> list[tuple[int, LeviComposition]]:
        return [(n, levi) for n in self.ranks for levi in self.compositions_for(n)]
