"""Machine-readable report bundles (JSON, schema 1)."""
from __future__ import annotations

import json
import time

SCHEMA = 1


def _plain(x):
    """Make scalars and nested containers JSON friendly and deterministic."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, str)) or x is None:
        return x
    if isinstance(x, int):
        return x
    return str(x)


class ReportBundle:
    def __init__(self, command, field=None, inputs=()):
        from . import __version__
        self.tool_version = __version__
        self.command = command
        self.field = field
        self.inputs = list(inputs)
        self.reports = []
        self.verdicts = {}
        self.notes = []
        self._t0 = time.perf_counter()
        self.timing = None
        self.headline = None
        self.exit = None

    def add(self, report):
        self.reports.append(report)
        return report

    def verdict(self, key, value):
        self.verdicts[key] = value

    def note(self, text):
        self.notes.append(text)

    @property
    def ok(self):
        return all(r.ok for r in self.reports)

    def finish(self):
        self.timing = time.perf_counter() - self._t0
        return self

    def to_dict(self, timing=False):
        d = {"schema": SCHEMA, "tool_version": self.tool_version, "command": self.command,
             "field": self.field, "inputs": self.inputs, "ok": self.ok,
             "headline": self.headline, "exit": self.exit,
             "verdicts": _plain(self.verdicts), "notes": list(self.notes),
             "reports": [r.to_dict() for r in self.reports]}
        d = _plain(d)
        if timing:
            d["timing_s"] = round(self.timing or 0.0, 6)
        return d

    def to_json(self, timing=False):
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def to_text(self, verbose=False):
        out = []
        for r in self.reports:
            bad = r.failures()
            out.append(f"{r.title}: {len(r) - len(bad)}/{len(r)} checks pass")
            for c in r.checks if verbose else bad:
                mark = "ok  " if c.passed else "FAIL"
                wit = f" at {', '.join(map(str, c.witness))}" if c.witness else ""
                det = f" ({c.detail})" if c.detail else ""
                out.append(f"  {mark} {c.name}{wit}{det}")
        for n in self.notes:
            out.append(n)
        return "\n".join(out) + "\n"
