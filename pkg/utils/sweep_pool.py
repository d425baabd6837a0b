"""
Bounded parallel evaluation of parameter sweeps
Caps worker threads via QSCATTER_THREADS
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from utils.config import Settings

T = TypeVar('T')
R = TypeVar('R')


class SweepPool:
    def __init__(self, max_workers: Optional[int] = None):
        self.logger = logging.getLogger(__name__)
        self.max_workers = max_workers or Settings.from_env().threads
        self.logger.debug(f"Sweep pool initialized: {self.max_workers} worker(s)")

    def map(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Evaluate func over items, preserving input order

        Args:
            func: Pure function of one grid point
            items: Grid points

        Returns:
            Results in the order of items
        """
        items = list(items)
        if self.max_workers <= 1 or len(items) < 2:
            return [func(item) for item in items]

        workers = min(self.max_workers, len(items))
        self.logger.debug(f"Evaluating {len(items)} points on {workers} threads")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            return list(executor.map(func, items))
