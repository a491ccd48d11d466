#!/usr/bin/env python3
"""
Ququart Toolkit - Grid Runner Base Class

Provides the evaluation loop, optional thread pool, lifecycle hooks and
callback wiring shared by the sweep, figure and audit runners.

Results always come back in input order, so the degree of parallelism
never changes the output.

Licensed under GPL v3
"""

import threading
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Generic, List, Optional, Sequence, TypeVar

P = TypeVar('P')
R = TypeVar('R')


class GridRunner(Generic[P, R]):
    """Base class for grid evaluations.

    Subclasses must override ``_evaluate()`` to compute one grid point.
    They may also override ``_pre_run()`` (for validation before any point
    is evaluated) and ``_post_run()`` (to post-process the ordered results).
    """

    def __init__(
        self,
        *,
        jobs: int = 1,
        on_log: Optional[Callable[[str, str], None]] = None,
        on_point_done: Optional[Callable[[int, int], None]] = None,
    ):
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        self.jobs = jobs
        self.on_log = on_log
        self.on_point_done = on_point_done

        self._running = False
        self._done = 0
        self._lock = threading.Lock()

    # -- Public API --

    def run(self, points: Sequence[P]) -> List[R]:
        """Evaluate every point and return the results in point order.

        A failing point is logged and evaluation continues; the first
        failure (in point order) is re-raised once all points are done.
        """
        points = list(points)
        if self._running:
            raise RuntimeError(f"{type(self).__name__} is already running")
        if not self._pre_run(points):
            return []

        self._running = True
        self._done = 0
        try:
            if self.jobs == 1 or len(points) < 2:
                outcomes = [self._guarded(i, p, len(points)) for i, p in enumerate(points)]
            else:
                with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                    outcomes = list(pool.map(
                        lambda ip: self._guarded(ip[0], ip[1], len(points)),
                        enumerate(points),
                    ))
        finally:
            self._running = False

        for ok, value in outcomes:
            if not ok:
                raise value
        return self._post_run([value for _, value in outcomes])

    def is_running(self) -> bool:
        return self._running

    # -- Hooks for subclasses --

    def _pre_run(self, points: List[P]) -> bool:
        """Called before evaluation starts.

        Return ``True`` to proceed, ``False`` to skip the run.
        """
        return True

    def _post_run(self, results: List[R]) -> List[R]:
        return results

    def _evaluate(self, point: P) -> R:
        """Called once per grid point.  Must be overridden."""
        raise NotImplementedError

    # -- Internal --

    def _guarded(self, index: int, point: P, total: int):
        try:
            outcome = (True, self._evaluate(point))
        except Exception as e:
            self._log(f"Point {index} failed: {e}", 'error')
            outcome = (False, e)

        with self._lock:
            self._done += 1
            done = self._done
        if self.on_point_done:
            self.on_point_done(done, total)
        return outcome

    def _log(self, message: str, level: str = 'info'):
        """Send a log message to the registered callback."""
        if self.on_log:
            self.on_log(message, level)
