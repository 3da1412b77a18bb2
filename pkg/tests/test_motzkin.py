import pytest

from core.errors import CountOverflowError, MalformedSignatureError
from core.motzkin import (
    DOWN,
    FLAT,
    MotzkinTables,
    final_height,
    motzkin_numbers,
    parse_steps,
    path_counts,
    rank,
    unrank,
)


def test_motzkin_numbers_small():
    assert motzkin_numbers(0) == [1]
    assert motzkin_numbers(1) == [1, 1]
    assert motzkin_numbers(4) == [1, 1, 2, 4, 9]
    assert motzkin_numbers(10)[-1] == 2188


def test_motzkin_numbers_overflow_and_negative():
    with pytest.raises(CountOverflowError):
        motzkin_numbers(40, bits=32)
    with pytest.raises(ValueError):
        motzkin_numbers(-1)


def test_path_counts_worked_values():
    assert path_counts(1, 2)[2][0] == 2
    assert path_counts(1, 3)[3][0] == 5
    m = motzkin_numbers(12)
    table = path_counts(0, 12)
    assert [table[n][0] for n in range(13)] == m


def test_tables_invariants():
    tables = MotzkinTables(12)
    m = motzkin_numbers(14)
    for L in range(12):
        assert tables.m1[L + 1][0] == m[L + 2] - m[L + 1]
    for n, row in enumerate(tables.m0):
        assert all(c >= 0 for c in row)
        assert len(row) == n + 1
    assert tables.count(0, 3, 5) == 0


def test_rank_orders_class_lexicographically():
    ordered = ["∘∘)", "∘)∘", "())", ")∘∘", ")()"]
    for index, text in enumerate(ordered, 1):
        path = parse_steps(text)
        assert rank(path, 1) == index
        assert unrank(1, 3, 0, index) == path


def test_rank_empty_and_smallest():
    assert rank((), 0) == 1
    assert unrank(0, 0, 0, 1) == ()
    assert rank((FLAT,) * 6, 0) == 1


def test_rank_unrank_round_trip():
    tables = MotzkinTables(9)
    for start in (0, 1):
        for n in range(10):
            for end in range(n + start + 1):
                total = tables.count(start, n, end)
                seen = set()
                for index in range(1, total + 1):
                    path = tables.unrank(start, n, end, index)
                    assert final_height(path, start) == end
                    assert tables.rank(path, start) == index
                    seen.add(path)
                assert len(seen) == total


def test_unrank_out_of_range():
    with pytest.raises(IndexError):
        unrank(1, 3, 0, 6)


def test_malformed_paths():
    with pytest.raises(MalformedSignatureError):
        final_height((DOWN, DOWN), 1)
    with pytest.raises(MalformedSignatureError):
        parse_steps("(x)")
