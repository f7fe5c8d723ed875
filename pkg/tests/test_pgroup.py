import itertools

import pytest

from modgal import GroupError, group_cyclic, group_elemab, group_product, group_validate
from modgal.errors import ParseError
from modgal.pgroup import elemab_coords, parse_group_spec

ALL = [
    group_cyclic(2, 1), group_cyclic(2, 2), group_cyclic(3, 1), group_cyclic(3, 2),
    group_cyclic(2, 3), group_elemab(2, 2)[0], group_elemab(3, 2)[0], group_elemab(2, 3)[0],
    group_product(group_cyclic(2, 1), group_cyclic(2, 2)), group_cyclic(3, 3),
]


def test_cyclic_examples():
    assert group_cyclic(2, 1).table == ((0, 1), (1, 0))
    C4 = group_cyclic(2, 2)
    assert C4.gens == (1,) and C4.elem_order[1] == 4
    assert group_cyclic(3, 1).order == 3
    assert group_cyclic(5, 0).order == 1


def test_elemab_examples():
    assert group_elemab(2, 1)[0].table == group_cyclic(2, 1).table
    V4 = group_elemab(2, 2)[0]
    assert V4.elem_order == (1, 2, 2, 2)
    E9 = group_elemab(3, 2)[0]
    assert E9.order == 9 and set(E9.elem_order[1:]) == {3}


@pytest.mark.parametrize("G", ALL, ids=lambda G: G.spec)
def test_tables_are_groups(G):
    n = G.order
    T = G.table
    for a, b, c in itertools.product(range(n), repeat=3):
        assert T[T[a][b]][c] == T[a][T[b][c]]
    assert group_validate(T).elem_order == G.elem_order


@pytest.mark.parametrize("p,n", [(2, 1), (2, 2), (3, 2), (2, 3)])
def test_elemab_coordinates_add(p, n):
    G, coords = group_elemab(p, n)
    for a, b in itertools.product(range(G.order), repeat=2):
        s = tuple((x + y) % p for x, y in zip(coords.coords[a], coords.coords[b]))
        assert coords.coords[G.mul(a, b)] == s
    assert elemab_coords(G).coords == coords.coords


def test_product():
    C2 = group_cyclic(2, 1)
    assert group_product(C2, C2).table == group_elemab(2, 2)[0].table
    assert group_product(C2, group_cyclic(2, 0)).table == C2.table
    C3 = group_cyclic(3, 1)
    P = group_product(C3, C3)
    assert P.table == group_elemab(3, 2)[0].table
    with pytest.raises(GroupError):
        group_product(C2, C3)


def test_product_copies_commute():
    G1, G2 = group_cyclic(2, 2), group_elemab(2, 2)[0]
    P = group_product(G1, G2)
    assert P.order == G1.order * G2.order
    n2 = G2.order
    for a in range(G1.order):
        for b in range(n2):
            x, y = a * n2, b
            assert P.mul(x, y) == P.mul(y, x)


def test_validate_rejections():
    assert group_validate([[0, 1], [1, 0]]).order == 2
    z3 = [[0, 1, 2], [1, 2, 0], [2, 0, 1]]
    bad = [row[:] for row in z3]
    bad[1][2], bad[2][1] = bad[2][1], bad[1][2]
    bad[1][1], bad[1][2] = bad[1][2], bad[1][1]
    with pytest.raises(GroupError):
        group_validate(bad)
    with pytest.raises(GroupError, match="prime power"):
        group_validate([[(i + j) % 6 for j in range(6)] for i in range(6)])
    with pytest.raises(GroupError):
        group_validate([[0, 1], [0, 1]])


def test_validate_respects_cap():
    big = group_cyclic(2, 5).table
    with pytest.raises(GroupError, match="cap"):
        group_validate(big)
    assert group_validate(big, max_order=32).order == 32


def test_parse_group_spec(tmp_path):
    assert parse_group_spec("cyclic:4").table == group_cyclic(2, 2).table
    assert parse_group_spec("cyclic:2^2").table == group_cyclic(2, 2).table
    assert parse_group_spec("elemab:3^2").table == group_elemab(3, 2)[0].table
    P = parse_group_spec("product:(cyclic:2)x(elemab:2^2)")
    assert P.order == 8
    f = tmp_path / "c3.txt"
    f.write_text("0 1 2\n1 2 0\n2 0 1\n")
    assert parse_group_spec(f"cayley:@{f}").order == 3
    for bad in ["cyclic:6", "dihedral:4", "product:(cyclic:2"]:
        with pytest.raises((ParseError, GroupError)):
            parse_group_spec(bad)
