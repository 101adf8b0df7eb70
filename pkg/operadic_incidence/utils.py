from itertools import chain, combinations, islice, product
from typing import Iterable, Iterator, List, Sequence, Tuple


def batched(gen: Iterable,
            batch_size: int):
    """
    Description:
        A util to slice a generator in a batch_size.
        The consumer can consume the generator in batches of given batch_size

    Args:
        gen: The generator to be consumed.
        batch_size: Consume batches of what size ?

    """
    gen = iter(gen)
    while True:
        batch = list(islice(gen, 0, batch_size))
        if len(batch) == 0:
            return
        yield batch


def powerset(items: Sequence) -> Iterator[Tuple]:
    """
    Description:
        All subsets of ``items``, smallest first, each in the order of ``items``.
    """
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def weak_compositions(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """
    Description:
        All ``k``-tuples of non-negative integers summing to ``n``.

    Args:
        n: The total.
        k: Number of parts.
    """
    if k == 0:
        if n == 0:
            yield ()
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, k - 1):
            yield (first,) + rest


def words(alphabet: Sequence, max_len: int) -> Iterator[Tuple]:
    """All words over ``alphabet`` of length at most ``max_len``, shortest first."""
    for length in range(max_len + 1):
        yield from product(alphabet, repeat=length)


def block_decompositions(word: Sequence) -> Iterator[List[Tuple]]:
    """All ways of cutting a nonempty word into consecutive nonempty blocks."""
    word = tuple(word)
    for cuts in powerset(range(1, len(word))):
        bounds = (0,) + cuts + (len(word),)
        yield [word[i:j] for i, j in zip(bounds, bounds[1:])]
