"""
Progress tracking for sampled orbit runs
Counts processed, accepted and redrawn samples; feeds debug log lines only
"""
import threading
import time
from collections import deque
from datetime import timedelta


class ProgressTracker:
    """Thread-safe progress tracker with throughput and ETA calculation"""

    def __init__(self, total_samples=0):
        """
        Initialize progress tracker

        Args:
            total_samples (int): Number of samples to run
        """
        self.total_samples = total_samples
        self.processed = 0
        self.accepted = 0
        self.failed = 0
        self.redrawn = 0

        self.start_time = time.time()

        # Track recent completions for throughput calculation
        self.recent_completions = deque(maxlen=100)

        # Thread safety (use RLock for reentrant locking to avoid deadlock)
        self.lock = threading.RLock()

    def update(self, status='accepted', redraws=0):
        """
        Record a finished sample

        Args:
            status (str): 'accepted' or 'failed'
            redraws (int): Draws rejected before this sample was accepted
        """
        with self.lock:
            self.processed += 1
            self.recent_completions.append(time.time())
            if status == 'accepted':
                self.accepted += 1
            else:
                self.failed += 1
            self.redrawn += redraws

    def get_throughput(self):
        """
        Current throughput in samples per minute

        Returns:
            float: Samples per minute
        """
        with self.lock:
            if len(self.recent_completions) < 2:
                return 0.0
            time_span = self.recent_completions[-1] - self.recent_completions[0]
            if time_span == 0:
                return 0.0
            return (len(self.recent_completions) - 1) / time_span * 60

    def get_eta(self):
        """
        Estimated time to completion

        Returns:
            timedelta: Estimated time remaining, or None if can't calculate
        """
        with self.lock:
            remaining = self.total_samples - self.processed
            if remaining <= 0:
                return timedelta(0)
            throughput = self.get_throughput()
            if throughput == 0:
                return None
            return timedelta(minutes=remaining / throughput)

    def get_stats(self):
        """
        Get comprehensive statistics

        Returns:
            dict: Statistics dictionary
        """
        with self.lock:
            eta = self.get_eta()
            elapsed = timedelta(seconds=time.time() - self.start_time)
            return {
                'total': self.total_samples,
                'processed': self.processed,
                'remaining': self.total_samples - self.processed,
                'accepted': self.accepted,
                'failed': self.failed,
                'redrawn': self.redrawn,
                'elapsed_time': str(elapsed).split('.')[0],
                'eta': str(eta).split('.')[0] if eta is not None else 'Calculating...',
                'throughput': f"{self.get_throughput():.2f}",
            }

    def set_total(self, total):
        """Update total sample count"""
        with self.lock:
            self.total_samples = total
