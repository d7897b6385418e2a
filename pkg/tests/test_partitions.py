from itertools import permutations
from math import factorial

import pytest

from hookharm.partitions import (BadHook, Diagram, Hook, centralizer_size, class_size, conjugate,
                                 contained, cycle_type, dominance_leq, horizontal_strips_added,
                                 hooks_of, is_hook, kostka, n_stat, partition_from_json,
                                 partition_list, partition_to_json, ssyt_enumerate)


def test_partition_counts():
    assert [len(partition_list(n)) for n in range(1, 11)] == [1, 2, 3, 5, 7, 11, 15, 22, 30, 42]


def test_conjugate_involution():
    for n in range(1, 8):
        for la in partition_list(n):
            assert conjugate(conjugate(la)) == la
    assert conjugate((4, 2, 1)) == (3, 2, 1, 1)


def test_dominance():
    assert dominance_leq((2, 2), (3, 1))
    assert not dominance_leq((3, 1, 1, 1), (2, 2, 2))
    assert not dominance_leq((2, 2, 2), (3, 1, 1, 1))


def test_n_stat_and_classes():
    assert n_stat((2, 1)) == 1
    assert n_stat((1, 1, 1)) == 3
    for n in range(1, 7):
        assert sum(class_size(mu) for mu in partition_list(n)) == factorial(n)
    assert centralizer_size((2, 2)) == 8
    assert cycle_type((1, 0, 3, 2, 4)) == (2, 2, 1)


def test_hooks():
    hs = hooks_of(4)
    assert [h.as_partition() for h in hs] == [(4,), (3, 1), (2, 1, 1), (1, 1, 1, 1)]
    h = Hook(2, 1)
    assert h.n == 4 and h.iota() == 2
    assert h.shift() == Hook(3, 0)
    assert Hook(3, 0).shift() is None
    assert Hook.from_partition((3, 1, 1)) == Hook(2, 2)
    assert is_hook((2, 1, 1)) and not is_hook((2, 2))
    with pytest.raises(BadHook):
        Hook(-1, 2)
    with pytest.raises(BadHook):
        Hook.from_partition((2, 2))


def test_diagrams():
    d = Diagram.ferrers((2, 1))
    assert d == Diagram([(0, 0), (1, 0), (0, 1)])
    assert d.is_ferrers() and d.to_partition() == (2, 1)
    h = Diagram.hook_det_diagram(1, 1)
    assert h == Diagram([(0, 0), (2, 0), (0, 1)])
    assert not h.is_ferrers()
    with pytest.raises(ValueError):
        Diagram([(0, 0), (0, 0)])


def test_kostka_numbers():
    assert kostka((2, 1), (1, 1, 1)) == 2
    assert kostka((3, 2), (2, 2, 1)) == 2
    assert kostka((2, 2), (3, 1)) == 0
    # sum_la f^la K_{la,1^n} = n!
    n = 5
    total = sum(kostka(la, (1,) * n) ** 2 for la in partition_list(n))
    assert total == factorial(n)


def test_ssyt_enumeration_matches_kostka():
    assert len(ssyt_enumerate((2, 1), max_entry=2)) == 2
    # s_32(1, 1, 1) = sum over contents of K_{32, mu}
    want = sum(kostka((3, 2), mu) * len(set(permutations(mu + (0,) * (3 - len(mu)))))
               for mu in partition_list(5) if len(mu) <= 3)
    assert len(ssyt_enumerate((3, 2), max_entry=3)) == want == 15


def test_strips_and_containment():
    assert sorted(horizontal_strips_added((1,), 1)) == [(1, 1), (2,)]
    assert contained((2, 1), (3, 1, 1))
    assert not contained((2, 2), (3, 1))


def test_json_roundtrip():
    assert partition_from_json(partition_to_json((3, 1))) == (3, 1)
