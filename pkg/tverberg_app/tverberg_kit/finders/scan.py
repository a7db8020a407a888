"""Candidate scans with optional worker processes.

Ordered scans return the first success in candidate order no matter how the
work was scheduled. Unordered scans return whichever success a worker reports
first (the "fast" mode). Callables handed to worker processes must be
picklable: module-level functions or ``functools.partial`` of them.
"""
from __future__ import annotations

import logging
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from itertools import islice
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")

CHUNK = 64


def _chunks(items: Iterable[T], size: int) -> Iterator[List[T]]:
    it = iter(items)
    while True:
        chunk = list(islice(it, size))
        if not chunk:
            return
        yield chunk


def _scan_chunk(test: Callable[[T], Optional[R]], chunk: Sequence[T]) -> Tuple[int, Optional[Tuple[int, R]]]:
    for pos, cand in enumerate(chunk):
        res = test(cand)
        if res is not None:
            return len(chunk), (pos, res)
    return len(chunk), None


def first_success(test: Callable[[T], Optional[R]], candidates: Iterable[T], jobs: int = 1,
                  ordered: bool = True) -> Tuple[Optional[Tuple[T, R]], int]:
    """Scan ``candidates`` for the first one where ``test`` returns non-None.

    Returns ((candidate, result) or None, number of candidates tested).
    """
    if jobs <= 1:
        scanned = 0
        for cand in candidates:
            scanned += 1
            res = test(cand)
            if res is not None:
                return (cand, res), scanned
        return None, scanned

    scanned = 0
    window = jobs * 4
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for group in _chunks(_chunks(candidates, CHUNK), window):
            futures = [pool.submit(_scan_chunk, test, chunk) for chunk in group]
            if ordered:
                for chunk, fut in zip(group, futures):
                    n, hit = fut.result()
                    if hit is not None:
                        pos, res = hit
                        scanned += pos + 1
                        for f in futures:
                            f.cancel()
                        return (chunk[pos], res), scanned
                    scanned += n
            else:
                pending = {f: chunk for f, chunk in zip(futures, group)}
                while pending:
                    done, _ = wait(list(pending), return_when=FIRST_COMPLETED)
                    for fut in done:
                        chunk = pending.pop(fut)
                        n, hit = fut.result()
                        if hit is not None:
                            pos, res = hit
                            scanned += pos + 1
                            for f in pending:
                                f.cancel()
                            return (chunk[pos], res), scanned
                        scanned += n
    logger.debug("scan exhausted after %d candidates", scanned)
    return None, scanned


def _map_chunk(fn: Callable[[T], R], chunk: Sequence[T]) -> List[R]:
    return [fn(c) for c in chunk]


def ordered_map(fn: Callable[[T], R], items: Iterable[T], jobs: int = 1) -> Iterator[R]:
    """``map`` that may use worker processes but always yields in input order."""
    if jobs <= 1:
        for item in items:
            yield fn(item)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        for group in _chunks(_chunks(items, CHUNK), jobs * 4):
            for fut in [pool.submit(_map_chunk, fn, chunk) for chunk in group]:
                yield from fut.result()
