"""Machine-readable verification reports with exact dumps.

A report is a list of per-check records plus a configuration echo and a
summary.  Every numeric payload inside params/lhs/rhs is exact: integers,
booleans, rational strings, or coefficient vectors; floating point never
appears.  Identity checks whose two sides live entirely inside one module
function dump null sides and carry only the verdict.

Serialization is deterministic: sorted keys, fixed separators, one trailing
newline.  Per-record wall times are measured and therefore the only
non-reproducible bytes; to_json(timings=False) / to_csv(timings=False) omit
them, and those forms are byte-stable across runs with identical
configuration and seed.

A record may carry a "skipped" note when a resource bound (the cyclotomic
level cap M_max) rules the check out before it runs; skipped records keep
verdict true so a suite's pass/fail state reflects only checks that ran.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

__all__ = ["SCHEMA_ID", "Report", "dump_value", "record"]

SCHEMA_ID = "gausstower-report/v1"


def dump_value(v):
    """Exact JSON-safe dump of the value kinds the suites produce."""
    if v is None or isinstance(v, (bool, int, str)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return [dump_value(x) for x in v]
    if isinstance(v, dict):
        return {str(k): dump_value(x) for k, x in v.items()}
    if hasattr(v, "to_json") and hasattr(v, "level"):
        # cyclotomic number: coefficient vector of rational strings
        return {"level": v.level, "coeffs": v.to_json()}
    if hasattr(v, "scalar") and hasattr(v, "exponent"):
        # tower monomial: scalar times a Frobenius power
        return {"scalar": dump_value(v.scalar), "frobenius_exponent": v.exponent}
    if hasattr(v, "order") and hasattr(v, "exp"):
        # root of unity by (order, exponent)
        return {"order": v.order, "exp": v.exp}
    if hasattr(v, "modulus") and hasattr(v, "value"):
        # truncated p-adic integer
        return {"p": v.p, "precision": v.precision, "value": v.value}
    if hasattr(v, "coeff_ints"):
        # unramified p-adic integer in the power basis
        return {
            "p": v.p,
            "f": v.f,
            "precision": v.precision,
            "coeffs": list(v.coeff_ints),
        }
    if hasattr(v, "coeffs") and hasattr(v, "f") and hasattr(v, "p"):
        # residue-field element in the power basis
        return {"p": v.p, "f": v.f, "coeffs": [dump_value(c) for c in v.coeffs]}
    raise TypeError(f"no exact dump for {type(v).__name__}")


def record(suite, check, params, lhs, rhs, verdict, wall_ms, skipped=None) -> dict:
    """One per-check record; skipped records keep a true verdict plus a note."""
    rec = {
        "suite": suite,
        "check": check,
        "params": dump_value(params),
        "lhs": dump_value(lhs),
        "rhs": dump_value(rhs),
        "verdict": bool(verdict),
        "wall_ms": int(wall_ms),
    }
    if skipped is not None:
        rec["skipped"] = str(skipped)
    return rec


@dataclass(frozen=True)
class Report:
    """Outcome of one suite run: config echo plus per-check records."""

    suite: str
    config: dict
    records: tuple

    @property
    def passed(self) -> bool:
        return all(r["verdict"] for r in self.records)

    def summary(self) -> dict:
        failed = sum(1 for r in self.records if not r["verdict"])
        skipped = sum(1 for r in self.records if "skipped" in r)
        return {
            "records": len(self.records),
            "passed": len(self.records) - failed - skipped,
            "failed": failed,
            "skipped": skipped,
            "ok": failed == 0,
        }

    def to_dict(self, timings: bool = True) -> dict:
        recs = [dict(r) for r in self.records]
        if not timings:
            for r in recs:
                r.pop("wall_ms", None)
        return {
            "schema": SCHEMA_ID,
            "suite": self.suite,
            "config": self.config,
            "summary": self.summary(),
            "records": recs,
        }

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"

    def to_csv(self, timings: bool = True) -> str:
        buf = io.StringIO()
        names = ["suite", "check", "params", "lhs", "rhs", "verdict", "skipped"]
        if timings:
            names.append("wall_ms")
        writer = csv.DictWriter(buf, fieldnames=names, lineterminator="\n")
        writer.writeheader()
        for r in self.records:
            row = {
                "suite": r["suite"],
                "check": r["check"],
                "params": json.dumps(r["params"], sort_keys=True),
                "lhs": json.dumps(r["lhs"], sort_keys=True),
                "rhs": json.dumps(r["rhs"], sort_keys=True),
                "verdict": "true" if r["verdict"] else "false",
                "skipped": r.get("skipped", ""),
            }
            if timings:
                row["wall_ms"] = r["wall_ms"]
            writer.writerow(row)
        return buf.getvalue()
