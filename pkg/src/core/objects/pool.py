import os
from concurrent.futures import Future, ThreadPoolExecutor
from threading import Lock
from typing import Any, Callable

from core.config.settings import settings


class WorkerPool:
    """Thread pool opened on first use and closed by the lifespan; reopens if used again after closing."""

    def __init__(self, max_workers: int):
        self.max_workers = max_workers

        self.__executor: ThreadPoolExecutor | None = None
        self.__lock = Lock()

    def start(self) -> ThreadPoolExecutor:
        with self.__lock:
            if self.__executor is None:
                self.__executor = ThreadPoolExecutor(max_workers=self.max_workers, thread_name_prefix='widthforge')

            return self.__executor

    def submit[T](self, function: Callable[..., T], *args: Any) -> Future[T]:
        return self.start().submit(function, *args)

    def shutdown(self):
        with self.__lock:
            if self.__executor is not None:
                self.__executor.shutdown(wait=True)
                self.__executor = None


executor = WorkerPool(settings.threads or min(8, os.cpu_count() or 1))
