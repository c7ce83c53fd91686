"""Ordered pass/fail reports for identity checks."""
from __future__ import annotations

from dataclasses import dataclass


class VerificationFailed(AssertionError):
    def __init__(self, name, report=None):
        super().__init__(name)
        self.name = name
        self.report = report


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    witness: tuple | None = None
    detail: str = ""

    def to_dict(self):
        return {"name": self.name, "passed": self.passed,
                "witness": list(self.witness) if self.witness is not None else None,
                "detail": self.detail}


def witness_of(space, j):
    """Basis labels of the j-th basis vector of a (tensor) space."""
    return tuple(p.label(i) for p, i in zip(space.factors, space.split(j)))


class CheckReport:
    def __init__(self, title=""):
        self.title = title
        self.checks = []

    def record(self, name, passed, witness=None, detail=""):
        self.checks.append(Check(name, bool(passed), witness, detail))
        return bool(passed)

    def equal(self, name, lhs, rhs, detail=""):
        """Record whether two LinMaps agree; the witness is the first basis
        element of the domain on which they differ."""
        j = lhs.first_difference(rhs)
        w = None if j is None else witness_of(lhs.domain, j)
        return self.record(name, j is None, w, detail)

    def extend(self, other):
        self.checks.extend(other.checks)
        return self

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def failures(self):
        return [c for c in self.checks if not c.passed]

    def names(self):
        return [c.name for c in self.checks]

    def get(self, name):
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def __getitem__(self, name):
        return self.get(name)

    def __iter__(self):
        return iter(self.checks)

    def __len__(self):
        return len(self.checks)

    def require(self, exc=VerificationFailed):
        bad = self.failures()
        if bad:
            raise exc(bad[0].name, self)
        return self

    def to_dict(self):
        return {"title": self.title, "checks": [c.to_dict() for c in self.checks]}

    def __repr__(self):
        status = "ok" if self.ok else f"{len(self.failures())} failed"
        return f"CheckReport({self.title!r}, {len(self)} checks, {status})"
