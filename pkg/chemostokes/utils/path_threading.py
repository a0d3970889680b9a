# ---------------------------------------------------------------------------------------#
# ----------------------------------------------------------------------------- HEADER --#

"""
:author:
    chemostokes developers

:synopsis:
    Worker threads for independent noise paths

:description:
    Every noise path is solved by a pure function of its path id, so paths can run on
    background threads without sharing mutable state. run_paths() hands path ids to a
    fixed number of threads and returns the results merged in path-id order, which keeps
    every ensemble reduction independent of the worker count. The numpy FFT kernels
    release the GIL, so threads give real overlap.

:see_also:
    ../conf.py -- path_threads, threading_halt

:license:
    see LICENSE.md

"""

# -----------------------------------------------------------------------------
# IMPORTS
# -----------------------------------------------------------------------------
import threading

from .io import IO
from .. import conf

# -----------------------------------------------------------------------------
# Launch thread
# -----------------------------------------------------------------------------


def launch_background_thread(func, arguments=None):
    """
    Create a background thread running func(arguments) and track it in conf.

    :return: the started thread, or None when halted or the start failed
    """
    if conf.threading_halt:
        return None
    if arguments is None:
        arguments = ()

    argwrap = (func, len(conf.path_threads), arguments)
    new_thread = threading.Thread(target=thread_starter_func, args=argwrap)
    new_thread.daemon = True

    # protect starting of a thread; the caller falls back to running inline
    try:
        new_thread.start()
        conf.path_threads.append(new_thread)
    except RuntimeError as e:
        IO.error("exception starting thread: %s" % e)
        return None
    return new_thread


def thread_starter_func(func, ID, args):
    """
    Wraps all worker calls to handle thread tracking.
    Exceptions are left to the wrapped function, which records them per path.
    """
    IO.debug("worker %d started" % ID)
    func(*args)
    IO.debug("worker %d finished" % ID)


def update_threads():
    """Refresh & Update the list of threads in case they are stale"""
    conf.path_threads = [t for t in conf.path_threads if t.is_alive()]


def run_paths(func, path_ids, workers=1):
    """
    Evaluate func(path_id) for every path id on up to `workers` threads.

    :param func: pure function of the path id
    :param path_ids: iterable of integer path ids
    :param workers: number of threads, 1 runs inline
    :type workers: int
    :return: list of results ordered by path id
    :rtype: list
    :raises: the exception of the lowest failing path id, after all paths finished
    """
    ordered = sorted(path_ids)
    results = {}
    failures = {}

    def work(chunk):
        for pid in chunk:
            if conf.threading_halt:
                return
            try:
                results[pid] = func(pid)
            except Exception as e:
                failures[pid] = e

    workers = max(1, min(int(workers), len(ordered) or 1))
    if workers == 1:
        work(ordered)
    else:
        chunks = [ordered[i::workers] for i in range(workers)]
        threads = []
        for chunk in chunks:
            t = launch_background_thread(work, (chunk,))
            if t is None:
                work(chunk)
            else:
                threads.append(t)
        for t in threads:
            t.join()
        update_threads()

    if failures:
        raise failures[min(failures)]
    missing = [pid for pid in ordered if pid not in results]
    if missing:
        raise RuntimeError("path workers halted before paths %s finished" % missing)
    return [results[pid] for pid in ordered]
