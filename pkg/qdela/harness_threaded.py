import queue
import threading
from typing import Callable

from kivy.logger import Logger

from .exceptions import StopException
from .harness import ExperimentRunner, resolve_threads


class ExperimentRunnerThreaded(ExperimentRunner):
    def __init__(
            self,
            config,
            out_dir,
            threads: int = None,
            progress_cb: Callable[[int, int], None] = None,
            run_finished_cb: Callable[[int], None] = None,
            **kwargs
    ):
        """
        Runs replicates on a pool of worker threads. Every run owns its
        random stream and staging files, so the merged tables do not depend
        on scheduling.

        threads -- worker count (default QDELA_THREADS or the CPU count)
        progress_cb -- called with (run_id, eval_count) after each checkpoint
        run_finished_cb -- called with run_id when a run completes
        """
        super().__init__(config, out_dir, **kwargs)
        self.threads = min(resolve_threads(threads), config.runs)
        self._progress_cb = progress_cb
        self._run_finished_cb = run_finished_cb
        self._stop_event = threading.Event()
        self._lock = threading.Lock()
        self._errors = []

    def _check_stop(self):
        if self._stop_event.is_set():
            raise StopException

    def _on_checkpoint(self, run_id, eval_count):
        super()._on_checkpoint(run_id, eval_count)
        if self._progress_cb:
            self._progress_cb(run_id, eval_count)

    def _on_run_finished(self, run_id):
        with self._lock:
            super()._on_run_finished(run_id)
        if self._run_finished_cb:
            self._run_finished_cb(run_id)

    def _run_all(self):
        pending = queue.Queue()
        for run_id in range(self.config.runs):
            pending.put(run_id)

        def target():
            while not self._stop_event.is_set():
                try:
                    run_id = pending.get_nowait()
                except queue.Empty:
                    return
                try:
                    self.run_single(run_id)
                except StopException:
                    Logger.info(f'Experiment: run {run_id} was stopped')
                    return
                except Exception as exc:
                    Logger.exception(f'Experiment: run {run_id} was interrupted by exception.', exc_info=exc)
                    with self._lock:
                        self._errors.append(exc)
                    self.stop()
                    return

        workers = [
            threading.Thread(target=target, name=f'qdela. Experiment worker {i}', daemon=True)
            for i in range(self.threads)
        ]
        Logger.debug(f'Experiment: {len(workers)} worker threads')
        for worker in workers:
            worker.start()
        for worker in workers:
            worker.join()
        if self._errors:
            raise self._errors[0]
        if self._stop_event.is_set():
            raise StopException

    def stop(self):
        Logger.info('Stop')
        self._stop_event.set()
