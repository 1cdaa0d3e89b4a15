from collections.abc import Iterator, Sequence
from typing import TypeVar

T = TypeVar("T")


def set_partitions(
    items: Sequence[T], blocks: int | None = None
) -> Iterator[list[list[T]]]:
    """Yields every partition of ``items`` in restricted-growth order.

    With ``blocks`` set, only partitions into exactly that many parts are produced.
    """
    n = len(items)
    if blocks is not None and not 1 <= blocks <= max(n, 1):
        return
    current: list[list[T]] = []

    def extend(i: int) -> Iterator[list[list[T]]]:
        if i == n:
            if blocks is None or len(current) == blocks:
                yield [list(block) for block in current]
            return
        item = items[i]
        remaining = n - i
        if blocks is None or len(current) + remaining - 1 >= blocks:
            for block in current:
                block.append(item)
                yield from extend(i + 1)
                block.pop()
        if blocks is None or len(current) < blocks:
            current.append([item])
            yield from extend(i + 1)
            current.pop()

    yield from extend(0)
