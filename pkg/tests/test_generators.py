import pytest

from chromsieve.generators import (complete, cycle, generate, pendant_augmented, petersen, random_gnm,
                                   random_lists, random_regular)


def test_fixed_families():
    assert cycle(5).m == 5 and cycle(5).is_regular()
    assert complete(4).m == 6 and complete(1).m == 0
    p = petersen()
    assert (p.n, p.m, p.max_degree()) == (10, 15, 3)
    with pytest.raises(ValueError):
        cycle(2)


def test_random_families_are_seeded():
    assert random_gnm(8, 12, 3) == random_gnm(8, 12, 3)
    assert random_gnm(8, 12, 3).is_connected()
    assert random_regular(3, 8, 7) == random_regular(3, 8, 7)
    g = random_regular(4, 9, 1)
    assert g.is_regular() and g.max_degree() == 4
    h = pendant_augmented(5, 6, 4, 2)
    assert h.n == 9 and h.m == 10 and h.is_connected()


def test_infeasible_parameters():
    with pytest.raises(ValueError):
        random_regular(3, 7, 0)
    with pytest.raises(ValueError):
        random_gnm(4, 7, 0)
    with pytest.raises(ValueError):
        random_gnm(6, 3, 0)
    with pytest.raises(ValueError):
        generate("grid", [3])


def test_random_lists():
    g = cycle(6)
    inst = random_lists(g, 3, 0.2, 5)
    assert inst.k == 3 and all(lst and lst <= {1, 2, 3} for lst in inst.lists)
    assert random_lists(g, 3, 0.5, 5) == random_lists(g, 3, 0.5, 5)
