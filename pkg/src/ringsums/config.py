"""Tunable limits shared by every module."""

from __future__ import annotations

from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Limits:
    # materialize the multiplication table up to this many elements
    table_threshold: int = 4096
    # exhaustive O(|R|^3) axiom check up to this size, sampled above
    axiom_check_threshold: int = 512
    size_limit: int = 6561
    lattice_limit: int = 20000
    mobius_subset_limit: int = 22
    dense_limit: int = 512

    def updated(self, **overrides: int) -> "Limits":
        known = {f.name for f in fields(self)}
        unknown = set(overrides) - known
        if unknown:
            raise ValueError(f"unknown limit(s): {sorted(unknown)}")
        for k, v in overrides.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"limit {k} must be a non-negative integer, got {v!r}")
        return replace(self, **overrides)


DEFAULT_LIMITS = Limits()
