"""Small shared helpers: bit iteration and deterministic parallel mapping."""

from concurrent.futures import ThreadPoolExecutor


class PreconditionError(ValueError):
    """A documented precondition was violated; carries an optional witness."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


def iter_bits(mask: int):
    """Yield the set-bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def parallel_map(fn, items, threads: int = 1) -> list:
    """Map ``fn`` over ``items``, returning results in input order.

    Work items must be independent and ``fn`` side-effect free.  With
    ``threads > 1`` items are dispatched to a thread pool; because results
    are collected in input order, any downstream reduction sees exactly the
    same sequence as a single-threaded run.
    """
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
