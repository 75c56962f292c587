"""Abstract base class for verification suites and the failure recorder."""

import logging
import time
from abc import ABC, abstractmethod
from collections.abc import Mapping
from typing import ClassVar

from kripkebench.core.errors import KripkeBenchError, SuiteError
from kripkebench.core.models import CaseFailure, SuiteReport
from kripkebench.logic.formula import Formula
from kripkebench.logic.printer import to_text
from kripkebench.semantics.frames import World

logger = logging.getLogger(__name__)


class SuiteRecorder:
    """Collects checks for one suite run."""

    def __init__(self, suite: str):
        """Initialize an empty record for the named suite."""
        self.suite = suite
        self.cases_run = 0
        self.failures: list[CaseFailure] = []

    def check(
        self,
        case_id: str,
        ok: bool,
        detail: str,
        world: World | None = None,
        assignment: Mapping[str, str] | None = None,
        formula: Formula | None = None,
    ) -> bool:
        """
        Record one check.

        Args:
            case_id: Stable identifier; reports are sorted by it
            ok: Outcome
            detail: What was expected, used only on failure
            world: Offending world, if any
            assignment: Offending assignment, if any
            formula: Offending formula, if any

        Returns:
            ok
        """
        self.cases_run += 1
        if not ok:
            failure = CaseFailure(
                case_id=case_id,
                detail=detail,
                world=world,
                assignment=dict(assignment or {}),
                formula=to_text(formula) if formula is not None else None,
            )
            self.failures.append(failure)
            logger.error(f"{self.suite} {case_id}: {detail}")
        return ok

    def guard(self, case_id: str, error: KripkeBenchError) -> None:
        """Record a construction that raised instead of returning."""
        self.check(case_id, False, f"{type(error).__name__}: {error}")

    def report(self, params: Mapping[str, int], wall_time: float) -> SuiteReport:
        return SuiteReport(
            suite=self.suite,
            params=dict(params),
            cases_run=self.cases_run,
            failures=sorted(self.failures, key=lambda f: f.case_id),
            wall_time_seconds=round(wall_time, 3),
        )


class Suite(ABC):
    """Abstract interface for a named, parameterized verification suite."""

    defaults: ClassVar[dict[str, int]] = {}
    minimums: ClassVar[dict[str, int]] = {}

    @property
    @abstractmethod
    def name(self) -> str:
        """Return the suite name used on the command line."""
        pass

    @property
    @abstractmethod
    def description(self) -> str:
        """Return a one-line description of what the suite checks."""
        pass

    @abstractmethod
    def run(self, rec: SuiteRecorder, params: Mapping[str, int]) -> None:
        """
        Execute every check of the suite.

        Args:
            rec: Recorder receiving each check
            params: defaults overridden by the caller's parameters
        """
        pass

    def resolve(self, overrides: Mapping[str, int]) -> dict[str, int]:
        unknown = sorted(set(overrides) - set(self.defaults))
        if unknown:
            raise SuiteError(
                f"Suite {self.name} does not take {unknown}. "
                f"Accepted: {sorted(self.defaults)}"
            )
        params = {**self.defaults, **overrides}
        for key, least in self.minimums.items():
            if params[key] < least:
                raise SuiteError(f"Suite {self.name} needs {key} >= {least}, got {params[key]}")
        return params

    def execute(self, **overrides: int) -> SuiteReport:
        """
        Run the suite and build its report.

        Raises:
            SuiteError: If a parameter is not accepted or below its minimum
        """
        params = self.resolve(overrides)
        rec = SuiteRecorder(self.name)
        start = time.perf_counter()
        self.run(rec, params)
        elapsed = time.perf_counter() - start
        report = rec.report(params, elapsed)
        logger.info(
            f"Suite {self.name}: {report.cases_run} cases, "
            f"{len(report.failures)} failures in {elapsed:.2f}s"
        )
        return report
