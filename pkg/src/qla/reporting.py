"""Check results with machine-readable witnesses, and small report helpers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from qla.scalars import Scalar
from qla.tensors import Mat


@dataclass(frozen=True)
class Witness:
    """Location and value of the first failing entry of an identity check."""

    key: tuple[int, ...]
    residual: str

    def describe(self) -> str:
        return f"at {self.key}: residual {self.residual}"


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""
    witness: Witness | None = None
    skipped: bool = False

    def line(self) -> str:
        if self.skipped:
            status = "SKIP"
        else:
            status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name}"
        if self.detail:
            text += f"  ({self.detail})"
        if self.witness is not None and not self.passed:
            text += f"  [{self.witness.describe()}]"
        return text


@dataclass
class CheckSuite:
    """Ordered collection of check results from one run."""

    results: list[CheckResult] = field(default_factory=list)

    def add(self, result: CheckResult) -> CheckResult:
        self.results.append(result)
        return result

    def extend(self, results: Sequence[CheckResult]) -> None:
        self.results.extend(results)

    @property
    def all_passed(self) -> bool:
        return all(r.passed or r.skipped for r in self.results)

    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if not r.passed and not r.skipped]

    def render(self) -> str:
        return "\n".join(r.line() for r in self.results)

    def to_json_dict(self) -> dict:
        return {
            "all_passed": self.all_passed,
            "results": [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "skipped": r.skipped,
                    "detail": r.detail,
                    "witness": (
                        {"key": list(r.witness.key), "residual": r.witness.residual}
                        if r.witness
                        else None
                    ),
                }
                for r in self.results
            ],
        }


def check_sparse_zero(name: str, tensor: Mapping[tuple[int, ...], Scalar], detail: str = "") -> CheckResult:
    """Pass iff every entry of the sparse tensor is zero."""
    for key in sorted(tensor):
        value = tensor[key]
        if not value.is_zero:
            return CheckResult(name, False, detail, Witness(key, value.render()))
    return CheckResult(name, True, detail)


def check_mat_zero(name: str, mat: Mat, detail: str = "") -> CheckResult:
    for i, row in enumerate(mat.rows):
        for j, value in enumerate(row):
            if not value.is_zero:
                return CheckResult(name, False, detail, Witness((i, j), value.render()))
    return CheckResult(name, True, detail)


def check_mats_equal(name: str, got: Mat, expected: Mat, detail: str = "") -> CheckResult:
    if got.nrows != expected.nrows or got.ncols != expected.ncols:
        return CheckResult(name, False, f"shape {got.nrows}x{got.ncols} vs {expected.nrows}x{expected.ncols}")
    return check_mat_zero(name, got - expected, detail)


def check_scalar_equal(name: str, got: Scalar, expected: Scalar, detail: str = "") -> CheckResult:
    if got == expected:
        return CheckResult(name, True, detail)
    return CheckResult(name, False, detail, Witness((), f"{got.render()} != {expected.render()}"))


def skipped(name: str, reason: str) -> CheckResult:
    return CheckResult(name, True, reason, skipped=True)
