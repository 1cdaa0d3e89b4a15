import pytest

from mst_fortify.partitions import set_partitions


@pytest.mark.parametrize("size, count", [(0, 1), (1, 1), (3, 5), (4, 15), (5, 52)])
def test_partition_counts_are_bell_numbers(size, count):
    assert sum(1 for _ in set_partitions(range(size))) == count


@pytest.mark.parametrize("size, blocks, count", [(4, 2, 7), (4, 3, 6), (5, 3, 25), (3, 4, 0)])
def test_exact_block_counts(size, blocks, count):
    found = list(set_partitions(range(size), blocks=blocks))
    assert len(found) == count
    assert all(len(partition) == blocks for partition in found)


def test_partitions_cover_every_item_once():
    for partition in set_partitions("abcd"):
        assert sorted(item for block in partition for item in block) == list("abcd")


def test_first_partition_is_a_single_block():
    assert next(set_partitions([1, 2, 3])) == [[1, 2, 3]]
