"""
Sample runners for ergodic statistics
Samples are independent; results always come back sorted by sample index
so a seed reproduces the same report under any scheduling
"""
import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Dict, List, Optional, Sequence

from ..config.settings import Settings
from ..utils.progress_tracker import ProgressTracker

logger = logging.getLogger(__name__)


class SequentialSampler:
    """Runs every sample in the calling process"""

    def __init__(self, progress_callback: Optional[Callable] = None):
        """
        Initialize sequential sampler

        Args:
            progress_callback: Optional callback receiving tracker stats
        """
        self.progress_callback = progress_callback
        self.progress_tracker = ProgressTracker()

    def run(self, worker: Callable[[object], Dict], tasks: Sequence) -> List[Dict]:
        """
        Run worker(task) for each task

        Args:
            worker: module-level function returning a dict with an 'index' key
            tasks: task payloads

        Returns:
            list: worker results sorted by index
        """
        self.progress_tracker.set_total(len(tasks))
        results = []
        for task in tasks:
            result = worker(task)
            results.append(result)
            self.progress_tracker.update(result.get('status', 'accepted'), result.get('redraws', 0))
            if self.progress_callback:
                self.progress_callback(self.progress_tracker.get_stats())
        return sorted(results, key=lambda r: r['index'])

    def get_stats(self) -> Dict:
        return self.progress_tracker.get_stats()


class ParallelSampler:
    """
    Fans samples out over a process pool

    Big-integer orbit work is CPU bound, so processes are used instead of
    threads; the aggregation order does not depend on completion order.
    """

    def __init__(self, max_workers: int = None, progress_callback: Optional[Callable] = None):
        """
        Initialize parallel sampler

        Args:
            max_workers: Number of worker processes (default: from settings)
            progress_callback: Optional callback receiving tracker stats
        """
        self.max_workers = max_workers or Settings.MAX_WORKERS
        self.progress_callback = progress_callback
        self.progress_tracker = ProgressTracker()

    def run(self, worker: Callable[[object], Dict], tasks: Sequence) -> List[Dict]:
        """
        Run worker(task) for each task in a process pool

        Args:
            worker: picklable module-level function returning a dict with 'index'
            tasks: picklable task payloads

        Returns:
            list: worker results sorted by index
        """
        self.progress_tracker.set_total(len(tasks))
        results = []
        with ProcessPoolExecutor(max_workers=self.max_workers) as executor:
            future_to_task = {executor.submit(worker, task): task for task in tasks}
            for future in as_completed(future_to_task):
                result = future.result()
                results.append(result)
                self.progress_tracker.update(result.get('status', 'accepted'), result.get('redraws', 0))
                if self.progress_callback:
                    self.progress_callback(self.progress_tracker.get_stats())
        logger.debug(f"sampling finished: {self.progress_tracker.get_stats()}")
        return sorted(results, key=lambda r: r['index'])

    def get_stats(self) -> Dict:
        return self.progress_tracker.get_stats()


def make_sampler(workers: int = None, progress_callback: Optional[Callable] = None):
    """SequentialSampler for one worker, ParallelSampler otherwise"""
    workers = Settings.MAX_WORKERS if workers is None else workers
    if workers <= 1:
        return SequentialSampler(progress_callback)
    return ParallelSampler(workers, progress_callback)
