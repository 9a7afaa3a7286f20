"""
Verification report classes

Each verification sweep returns a SweepResult; the verify driver collects
them into a VerifySummary. Per-item timings are kept in a TDigest so large
sweeps never store every sample.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from fastdigest import TDigest


@dataclass
class SweepResult:
    """Outcome of one verification sweep.

    Attributes:
        name: Sweep identifier, e.g. "pbw-basis"
        cartan: Cartan type the sweep ran on
        checked: Number of individual items verified
        failures: Human-readable failure descriptions (empty when passed)
        timing_state: Serialized TDigest of per-item wall times in seconds (None if not sampled)
        skipped: Reason the sweep did not apply to this Cartan type (None if it ran)
    """
    name: str
    cartan: str
    checked: int = 0
    failures: List[str] = field(default_factory=list)
    timing_state: Optional[Dict[str, Any]] = None
    skipped: Optional[str] = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def record_time(self, seconds: float) -> None:
        # stored serialized: results cross worker process boundaries
        digest = TDigest.from_dict(self.timing_state) if self.timing_state else TDigest()
        digest.update(seconds)
        self.timing_state = digest.to_dict()

    @property
    def timing_digest(self) -> Optional[TDigest]:
        return TDigest.from_dict(self.timing_state) if self.timing_state else None

    @property
    def time_p50(self) -> Optional[float]:
        """Median per-item time in seconds."""
        return self.timing_digest.percentile(50) if self.timing_digest else None

    @property
    def time_p90(self) -> Optional[float]:
        return self.timing_digest.percentile(90) if self.timing_digest else None

    @property
    def time_p99(self) -> Optional[float]:
        return self.timing_digest.percentile(99) if self.timing_digest else None

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        """Deterministic JSON form; timings are included only on request."""
        out: Dict[str, Any] = {
            "name": self.name,
            "cartan": self.cartan,
            "passed": self.passed,
            "checked": self.checked,
            "failures": list(self.failures),
        }
        if self.skipped:
            out["skipped"] = self.skipped
        if timings:
            out["timings"] = {"p50": self.time_p50, "p90": self.time_p90, "p99": self.time_p99}
        return out

    def __str__(self) -> str:
        status = "passed" if self.passed else f"FAILED ({len(self.failures)})"
        if self.skipped:
            status = f"skipped ({self.skipped})"
        parts = [f"Sweep {self.name} on {self.cartan}: {status}", f"checked={self.checked}"]
        if self.time_p50 is not None:
            parts.append(f"p50={self.time_p50:.4f}s")
        return " ".join(parts)


@dataclass
class VerifySummary:
    """All sweep results of one verify run, in a canonical order."""

    results: List[SweepResult]

    def __post_init__(self):
        self.results = sorted(self.results, key=lambda r: (r.cartan, r.name))

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> List[str]:
        return [f"{r.cartan}/{r.name}: {f}" for r in self.results for f in r.failures]

    def to_dict(self, timings: bool = False) -> Dict[str, Any]:
        return {
            "passed": self.passed,
            "sweeps": [r.to_dict(timings) for r in self.results],
            "failures": self.failures,
        }
