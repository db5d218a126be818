import multiprocessing
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Any, Callable, List, Optional, Sequence

from .errors import XibasinError
from .logger_config import get_logger
from .resource_manager import default_workers


class BatchWorker:
    """Runs independent tasks across worker processes with progress tracking."""

    # Progress steps and their corresponding percentage
    PROGRESS_STEPS = {
        "Starting batch": 0,
        "Dispatching tasks": 5,
        "Collecting results": 10,
        "Completed": 100
    }

    def __init__(
        self,
        func: Callable[[Any], Any],
        tasks: Sequence[Any],
        workers: Optional[int] = None,
        label: str = "batch",
        progress_callback: Optional[Callable[[int], None]] = None,
        status_callback: Optional[Callable[[str], None]] = None,
    ):
        self.func = func
        self.tasks = list(tasks)
        self.workers = workers if workers and workers > 0 else default_workers()
        self.label = label
        self.progress_callback = progress_callback
        self.status_callback = status_callback
        self._stop = False
        self._current_progress = 0
        self.logger = get_logger(__name__)

    def update_progress(self, message):
        """Update progress from a step name or a numeric percentage."""
        try:
            if isinstance(message, (int, float)):
                progress = int(message)
                if progress != self._current_progress:
                    self._current_progress = progress
                    if self.progress_callback:
                        self.progress_callback(progress)
            else:
                message = str(message).strip()
                if message in self.PROGRESS_STEPS:
                    self.update_progress(self.PROGRESS_STEPS[message])
                    if self.status_callback:
                        self.status_callback(f"{self.label}: {message}")
        except Exception as e:
            self.logger.warning(f"Error updating progress: {e}")

    def _task_done(self, done: int):
        span = 100 - self.PROGRESS_STEPS["Collecting results"]
        self.update_progress(self.PROGRESS_STEPS["Collecting results"] + span * done // max(1, len(self.tasks)))

    def run(self) -> List[Any]:
        """Run every task; results come back in task order."""
        total = len(self.tasks)
        self.logger.info(f"Starting {self.label}: {total} tasks on {self.workers} worker(s)")
        self.update_progress("Starting batch")
        results: List[Any] = [None] * total

        if self.workers == 1 or total <= 1:
            self.update_progress("Dispatching tasks")
            for i, task in enumerate(self.tasks):
                if self._stop:
                    raise XibasinError(f"{self.label} stopped")
                results[i] = self.func(task)
                self._task_done(i + 1)
        else:
            context = multiprocessing.get_context("spawn")
            with ProcessPoolExecutor(max_workers=min(self.workers, total), mp_context=context) as pool:
                self.update_progress("Dispatching tasks")
                futures = {pool.submit(self.func, task): i for i, task in enumerate(self.tasks)}
                self.update_progress("Collecting results")
                try:
                    for done, future in enumerate(as_completed(futures), start=1):
                        if self._stop:
                            raise XibasinError(f"{self.label} stopped")
                        results[futures[future]] = future.result()
                        self._task_done(done)
                except BaseException:
                    pool.shutdown(wait=False, cancel_futures=True)
                    raise

        self.update_progress("Completed")
        self.logger.info(f"{self.label} completed")
        return results

    def stop(self):
        """Stop after the task currently being collected."""
        self._stop = True
        self.logger.info(f"{self.label} stop requested")
