"""Wall-clock and step budgets for the expensive kernels."""

from __future__ import annotations

import time


class BudgetExceeded(RuntimeError):
    """Raised when a computation runs past its time or step allowance."""


class Budget:
    """Cooperative budget: long loops call :meth:`check` now and then.

    ``max_ms`` bounds wall-clock time, ``max_steps`` bounds the number of
    ``check`` calls.  Either may be None.
    """

    def __init__(self, max_ms=None, max_steps=None):
        self.max_ms = max_ms
        self.max_steps = max_steps
        self.steps = 0
        self._t0 = time.monotonic()

    def check(self):
        self.steps += 1
        if self.max_steps is not None and self.steps > self.max_steps:
            raise BudgetExceeded(f"step budget of {self.max_steps} exhausted")
        # reading the clock every call is measurable in tight loops
        if self.max_ms is not None and self.steps % 64 == 0:
            if (time.monotonic() - self._t0) * 1000 > self.max_ms:
                raise BudgetExceeded(f"time budget of {self.max_ms} ms exhausted")

    def elapsed_ms(self):
        return (time.monotonic() - self._t0) * 1000
