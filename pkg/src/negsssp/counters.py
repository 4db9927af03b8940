"""Work/span accounting for oracle calls.

Execution here is sequential; parallelism is modeled by *stages*.  A stage
groups tasks that would run concurrently (e.g. per-cluster solves inside
one decomposition round).  Work adds across everything; span adds the
maximum task cost per stage, so ``span <= work`` always.

Each oracle call is logged as ``(kind, n, m, units, stage, task)`` which
lets tests recompute the critical path from the log and compare it with
the live counter, and lets the harness check the size-subadditivity audit
(task problem sizes within a stage must not exceed the stage's ambient
problem size).
"""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CallRecord:
    kind: str
    n: int
    m: int
    units: int
    stage: int
    task: int


class AuditError(AssertionError):
    """A counter invariant (size audit, span recomputation) failed."""


@dataclass
class WorkSpanCounter:
    work: int = 0
    span: int = 0
    calls: list[CallRecord] = field(default_factory=list)
    stages: int = 0

    _stage_open: bool = False
    _stage_ambient: tuple[int, int] | None = None
    _stage_task_units: list[int] = field(default_factory=list)
    _stage_task_sizes: list[tuple[int, int]] = field(default_factory=list)

    def reset(self) -> None:
        self.work = 0
        self.span = 0
        self.calls.clear()
        self.stages = 0
        self._stage_open = False
        self._stage_ambient = None
        self._stage_task_units = []
        self._stage_task_sizes = []

    # -- stage / task structure -------------------------------------------

    def begin_stage(self, ambient: tuple[int, int] | None = None) -> None:
        if self._stage_open:
            raise AuditError("stage already open")
        self._stage_open = True
        self._stage_ambient = ambient
        self._stage_task_units = []
        self._stage_task_sizes = []

    def begin_task(self, size: tuple[int, int] | None = None) -> None:
        if not self._stage_open:
            raise AuditError("task outside stage")
        self._stage_task_units.append(0)
        self._stage_task_sizes.append(size if size is not None else (0, 0))

    def end_stage(self) -> None:
        if not self._stage_open:
            raise AuditError("no stage open")
        if self._stage_ambient is not None and self._stage_task_sizes:
            tot_n = sum(s[0] for s in self._stage_task_sizes)
            tot_m = sum(s[1] for s in self._stage_task_sizes)
            amb_n, amb_m = self._stage_ambient
            if tot_n > amb_n or tot_m > amb_m:
                raise AuditError(
                    f"stage size audit failed: tasks sum to ({tot_n},{tot_m})"
                    f" > ambient ({amb_n},{amb_m})"
                )
        if self._stage_task_units:
            self.span += max(self._stage_task_units)
        self.stages += 1
        self._stage_open = False
        self._stage_ambient = None

    # -- charging -----------------------------------------------------------

    def charge(self, kind: str, n: int, m: int, units: int) -> None:
        """Record one oracle call of the given problem size and cost."""
        units = int(units)
        self.work += units
        if self._stage_open and self._stage_task_units:
            task = len(self._stage_task_units) - 1
            self._stage_task_units[task] += units
            stage = self.stages
        else:
            # A lone call is its own sequential stage of one task.
            self.span += units
            stage = self.stages
            task = 0
            self.stages += 1
        self.calls.append(CallRecord(kind, int(n), int(m), units, stage, task))

    # -- verification --------------------------------------------------------

    def recompute_span(self) -> int:
        """Critical path recomputed from the call log alone."""
        per_stage: dict[int, dict[int, int]] = {}
        for rec in self.calls:
            per_stage.setdefault(rec.stage, {}).setdefault(rec.task, 0)
            per_stage[rec.stage][rec.task] += rec.units
        return sum(max(tasks.values()) for tasks in per_stage.values())

    def verify(self) -> None:
        if self._stage_open:
            raise AuditError("stage left open")
        if self.span > self.work:
            raise AuditError(f"span {self.span} exceeds work {self.work}")
        re_span = self.recompute_span()
        if re_span != self.span:
            raise AuditError(f"recomputed span {re_span} != live span {self.span}")

    def oracle_calls(self) -> int:
        return len(self.calls)


# Default counter used when callers do not pass their own.  Totals are
# deterministic for a fixed seed because execution order is deterministic.
GLOBAL_COUNTER = WorkSpanCounter()
