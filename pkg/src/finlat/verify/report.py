"""Report containers for the property-suite runner.

A report serializes two ways: ``to_text`` for humans (includes wall-clock
timings) and ``to_structured`` for machines.  ``canonical_bytes`` encodes the
structured form with sorted keys and no whitespace; timings are omitted there
unless the config opted in, so two runs with the same config produce the same
bytes.
"""

from dataclasses import dataclass
import json

SUITE_SCHEMA = "finlat-suite-report/1"


@dataclass(frozen=True)
class PropertyResult:
    property_id: str
    exhaustive: int
    sampled: int
    failures: int
    not_applicable: int
    witness: object
    seconds: float

    def to_structured(self, include_timing=False):
        out = {
            "property": self.property_id,
            "exhaustive": self.exhaustive,
            "sampled": self.sampled,
            "failures": self.failures,
            "not_applicable": self.not_applicable,
            "witness": self.witness,
        }
        if include_timing:
            out["seconds"] = round(self.seconds, 6)
        return out


@dataclass(frozen=True)
class SuiteReport:
    config: dict
    results: tuple
    schema: str = SUITE_SCHEMA

    @property
    def ok(self):
        return all(r.failures == 0 for r in self.results)

    def to_structured(self):
        include_timing = bool(self.config.get("include_timing"))
        return {
            "schema": self.schema,
            "config": self.config,
            "ok": self.ok,
            "results": [r.to_structured(include_timing) for r in self.results],
        }

    def canonical_bytes(self):
        return json.dumps(
            self.to_structured(), sort_keys=True, separators=(",", ":")
        ).encode("utf-8")

    def to_text(self):
        lines = []
        header = "%-8s %10s %10s %8s %6s %9s" % (
            "property", "exhaustive", "sampled", "failed", "n/a", "time",
        )
        lines.append(header)
        lines.append("-" * len(header))
        for r in self.results:
            lines.append(
                "%-8s %10d %10d %8d %6d %8.2fs"
                % (
                    r.property_id, r.exhaustive, r.sampled,
                    r.failures, r.not_applicable, r.seconds,
                )
            )
        verdict = "PASS" if self.ok else "FAIL"
        total = sum(r.exhaustive + r.sampled for r in self.results)
        lines.append(
            "suite: %s (%d properties, %d instance checks)"
            % (verdict, len(self.results), total)
        )
        for r in self.results:
            if r.witness is None:
                continue
            w = r.witness
            lines.append(
                "witness %s at %s index %d:"
                % (r.property_id, w.get("stage"), w.get("index", -1))
            )
            record = w.get("record")
            if record:
                for ln in record.splitlines():
                    lines.append("  " + ln)
            lines.append("  detail: %s" % json.dumps(w.get("detail"), sort_keys=True))
        return "\n".join(lines)
