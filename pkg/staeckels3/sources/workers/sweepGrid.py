# This Python file uses the following encoding: utf-8
from typing import Any, Callable, List, Optional, Sequence
import logging
import os
import multiprocess as mp

from ..config import loadConfigCurrent
config = loadConfigCurrent()
from ..errors import ConfigError

logger = logging.getLogger(__name__)



def resolveThreads(threads: Optional[int]=None) -> int:
    """
    Return the size of the worker pool.

    The order of precedence is: the given value, the environment variable
    named by config['threadsEnv'], the configuration and finally the number
    of available cpus.

    Raises
    ------
    ConfigError
        Non positive or non integer number of threads.
    """

    for source, value in (('argument', threads),
                          ('environment', os.environ.get(config['threadsEnv'])),
                          ('configuration', config['threads'])):
        if value is None or value=='':
            continue
        try:
            n = int(value)
        except (TypeError, ValueError):
            raise ConfigError('Number of threads from the {} must be an integer, got {!r}'.format(source, value))
        if n<1:
            raise ConfigError('Number of threads from the {} must be >= 1, got {}'.format(source, n))
        return n

    return max(1, os.cpu_count() or 1)



def sweepGrid(fun: Callable[[Any], Any],
              items: Sequence[Any],
              threads: Optional[int]=None,
              chunksize: Optional[int]=None) -> List[Any]:
    """
    Apply fun to every item through a pool of processes and return the
    results in the order of items.

    multiprocess pickles with dill, so fun may be a closure. With a single
    thread or a single item the sweep runs in the current process.

    Parameters
    ----------
    fun : callable
        Function of one item.
    items : sequence
        Items of the grid.
    threads : int, optional
        Size of the pool, see resolveThreads.
    chunksize : int, optional
        Items sent to a worker at once, by default a quarter of the fair share.
    """

    items = list(items)
    n = min(resolveThreads(threads), max(1, len(items)))

    if n==1:
        return [fun(item) for item in items]

    if chunksize is None:
        chunksize = max(1, len(items)//(4*n))

    logger.info('Worker pool of {} processes for {} items'.format(n, len(items)))
    with mp.Pool(processes=n) as pool:
        results = pool.map(fun, items, chunksize=chunksize)

    return results
