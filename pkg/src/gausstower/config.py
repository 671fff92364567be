"""Declarative run configuration with validation.

One JSON object configures every suite; command-line flags override single
keys.  Without an explicit --config path the GAUSSTOWER_CONFIG environment
variable is consulted, and failing that the built-in defaults apply.

The tame families are given as (f, e) pairs and combined with every listed
prime, so each combination must satisfy gcd(e, p) = 1 and e | p^f - 1;
violations are rejected at construction with a message naming the family.
Empty prime or family lists are legal and yield empty (vacuously passing)
suites.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields
from math import gcd

__all__ = ["ENV_VAR", "Config", "load_config"]

ENV_VAR = "GAUSSTOWER_CONFIG"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class Config:
    """Validated parameters shared by all suites.

    primes: odd primes p, the residue characteristics to exercise.
    families: (f, e) pairs; each prime p gets the degree-ef tame extension
        with residue degree f and ramification e.
    m_max: largest conductor exponent for multiplicative characters.
    precision: p-adic truncation exponent N for lattice and group-ring work.
    M_max: cap on the cyclotomic level a single check may touch; checks
        that would exceed it are recorded as skipped rather than run.
    convention_sign: tame-symbol normalization, -1 for the inverse-residue
        action (the default) and +1 for the direct one.
    jobs: worker-pool width; 1 runs everything in-process.
    seed: base seed for all sampled parameter points.
    out: default report path (None prints to stdout).
    format: "json" or "csv".
    """

    primes: tuple = (3,)
    families: tuple = ((2, 4),)
    m_max: int = 2
    precision: int = 8
    M_max: int = 10_000_000
    convention_sign: int = -1
    jobs: int = 1
    seed: int = 0
    out: str | None = None
    format: str = "json"

    def __post_init__(self):
        primes = tuple(self.primes)
        for p in primes:
            if not isinstance(p, int) or p == 2 or not _is_prime(p):
                raise ValueError(f"primes must be odd primes, got {p!r}")
        if len(set(primes)) != len(primes):
            raise ValueError("primes must be distinct")
        object.__setattr__(self, "primes", primes)

        fams = []
        for fam in self.families:
            fam = tuple(fam)
            if len(fam) != 2 or not all(isinstance(x, int) and x >= 1 for x in fam):
                raise ValueError(
                    f"families must be (f, e) pairs of positive integers, got {fam!r}"
                )
            fams.append(fam)
        if len(set(fams)) != len(fams):
            raise ValueError("families must be distinct")
        object.__setattr__(self, "families", tuple(fams))

        for p in primes:
            for f, e in self.families:
                if gcd(e, p) != 1:
                    raise ValueError(
                        f"family (f={f}, e={e}) is wild at p={p}: gcd(e, p) != 1"
                    )
                if e > 1 and pow(p, f, e) != 1:
                    raise ValueError(
                        f"family (f={f}, e={e}) needs e | p^f - 1 at p={p}"
                    )

        if not isinstance(self.m_max, int) or self.m_max < 0:
            raise ValueError(f"m_max must be a nonnegative integer, got {self.m_max!r}")
        if not isinstance(self.precision, int) or self.precision < 1:
            raise ValueError(
                f"precision must be a positive integer, got {self.precision!r}"
            )
        if not isinstance(self.M_max, int) or self.M_max < 1:
            raise ValueError(f"M_max must be a positive integer, got {self.M_max!r}")
        if self.convention_sign not in (1, -1):
            raise ValueError(
                f"convention_sign must be 1 or -1, got {self.convention_sign!r}"
            )
        if not isinstance(self.jobs, int) or self.jobs < 1:
            raise ValueError(f"jobs must be a positive integer, got {self.jobs!r}")
        if not isinstance(self.seed, int):
            raise ValueError(f"seed must be an integer, got {self.seed!r}")
        if self.out is not None and not isinstance(self.out, str):
            raise ValueError(f"out must be a path string or null, got {self.out!r}")
        if self.format not in ("json", "csv"):
            raise ValueError(f"format must be 'json' or 'csv', got {self.format!r}")

    @property
    def grid(self) -> tuple:
        """All (p, e, f) triples: primes crossed with the (f, e) families."""
        return tuple((p, e, f) for p in self.primes for (f, e) in self.families)

    @property
    def fields(self) -> tuple:
        """Deduplicated (p, f) base fields: each prime's Q_p plus the
        residue fields its families reach."""
        seen = []
        for p in self.primes:
            if (p, 1) not in seen:
                seen.append((p, 1))
        for p, _e, f in self.grid:
            if (p, f) not in seen:
                seen.append((p, f))
        return tuple(seen)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["primes"] = list(self.primes)
        d["families"] = [list(fam) for fam in self.families]
        return d


def load_config(path: str | None = None, overrides: dict | None = None) -> Config:
    """Build a Config from a JSON file plus per-key overrides.

    Unknown keys are rejected by name; override values equal to None are
    ignored so flag defaults do not shadow file values.
    """
    known = {f.name for f in fields(Config)}
    data: dict = {}
    src = path or os.environ.get(ENV_VAR)
    if src:
        try:
            with open(src, encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise ValueError(f"configuration file not found: {src}") from None
        except json.JSONDecodeError as exc:
            raise ValueError(f"configuration file {src} is not valid JSON: {exc}") from None
        if not isinstance(data, dict):
            raise ValueError("configuration root must be a JSON object")
        for key in data:
            if key not in known:
                raise ValueError(f"unknown configuration key: {key!r}")
    if overrides:
        for key, value in overrides.items():
            if key not in known:
                raise ValueError(f"unknown configuration key: {key!r}")
            if value is not None:
                data[key] = value
    return Config(**data)
