"""
    Copyright 2024 Contributors

    Licensed under the Apache License, Version 2.0 (the "License");
    you may not use this file except in compliance with the License.
    You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

    Unless required by applicable law or agreed to in writing, software
    distributed under the License is distributed on an "AS IS" BASIS,
    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
    See the License for the specific language governing permissions and
    limitations under the License.

    An ordered multiprocessing worker pool for sweep cells and trials.
"""
import gc
import logging
import multiprocessing
from multiprocessing import Process
import queue

import tqdm

from ..utils import sys_tracker

logger = logging.getLogger(__name__)

def worker_fn(worker_id, task_queue, res_queue, user_fn):
    """ The worker function in the worker pool

    Parameters
    ----------
    worker_id : int
        The worker ID, starting from 0.
    task_queue : Queue
        The queue that contains all tasks
    res_queue : Queue
        The queue that contains the results. Failures are sent back as the
        raised exception so the master can re-raise them.
    user_fn : callable
        The function applied to each task.
    """
    logger.debug("Worker %d started.", worker_id)
    try:
        while True:
            # If the queue is empty, it will raise the Empty exception.
            i, task = task_queue.get_nowait()
            try:
                res_queue.put((i, True, user_fn(task)))
            except Exception as exc: # pylint: disable=broad-except
                res_queue.put((i, False, exc))
            gc.collect()
    except queue.Empty:
        pass

def ordered_map(user_fn, tasks, num_processes=1, progress=False):
    """ Apply a function to tasks with a pool of worker processes.

    All tasks are put in a task queue that the workers drain. Each task is
    associated with its index and the results are returned in task order,
    so the output does not depend on the number of processes or on the
    schedule.

    With one process, or at most one task, the tasks run in the main process.

    Parameters
    ----------
    user_fn : callable
        A picklable function of one task.
    tasks : list
        Picklable tasks.
    num_processes : int
        The number of processes that run in parallel.
    progress : bool
        Show a tqdm progress bar over finished tasks.

    Returns
    -------
    list : user_fn(task) for every task, in order.
    """
    tasks = list(tasks)
    if num_processes > 1 and len(tasks) > 1:
        processes = []
        return_dict = {}
        error = None
        with multiprocessing.Manager() as manager:
            task_queue = manager.Queue()
            res_queue = manager.Queue(8)
            for i, task in enumerate(tasks):
                task_queue.put((i, task))
            for i in range(min(num_processes, len(tasks))):
                proc = Process(target=worker_fn, args=(i, task_queue, res_queue, user_fn))
                proc.start()
                processes.append(proc)

            pbar = tqdm.tqdm(total=len(tasks), disable=not progress)
            while len(return_dict) < len(tasks):
                task_idx, success, vals = res_queue.get()
                return_dict[task_idx] = vals
                if not success and (error is None or task_idx < error[0]):
                    error = (task_idx, vals)
                sys_tracker.check(f'process task: {task_idx}')
                pbar.update(1)
            pbar.close()

            for proc in processes:
                proc.join()
        if error is not None:
            raise error[1]
        return [return_dict[i] for i in range(len(tasks))]
    else:
        return [user_fn(task) for task in tqdm.tqdm(tasks, disable=not progress)]
