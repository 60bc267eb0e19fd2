import pytest
from hypothesis import given, settings

from csf.order import (
    BelowDiagonal,
    EmptyInput,
    NotNonDecreasing,
    OutOfRange,
    HessenbergError,
    bounce_data,
    catalan,
    dyck_word,
    enumerate_hessenberg,
    graph_edges,
    longest_chain,
    make_hessenberg,
    parse_hessenberg,
    precedes,
    square_below_path,
)

import order_checks
from oracles import catalan_formula, edges, hessenberg, naive_bounce, prec


def test_valid_functions():
    assert make_hessenberg((2, 3, 4, 4)).values == (2, 3, 4, 4)
    assert make_hessenberg([1, 2, 3]).n == 3


@pytest.mark.parametrize(
    "values, error",
    [((), EmptyInput), ((2, 1, 3), NotNonDecreasing), ((1, 1, 3), BelowDiagonal), ((2, 4, 4), OutOfRange)],
)
def test_invalid_functions(values, error):
    with pytest.raises(error):
        make_hessenberg(values)


def test_parse():
    assert parse_hessenberg(" 2,3,4,4 ").values == (2, 3, 4, 4)
    with pytest.raises(EmptyInput):
        parse_hessenberg("")
    with pytest.raises(HessenbergError, match="position 3"):
        parse_hessenberg("2,x,4")


def test_enumerate_three():
    got = [f.values for f in enumerate_hessenberg(3)]
    assert got == [(1, 2, 3), (1, 3, 3), (2, 2, 3), (2, 3, 3), (3, 3, 3)]


def test_enumerate_with_bounce_filter():
    all4 = enumerate_hessenberg(4)
    assert len(all4) == 14
    assert enumerate_hessenberg(4, 3) == [f for f in all4 if len(naive_bounce(f)) == 3]
    assert [f.values for f in enumerate_hessenberg(3, 3)] == [(1, 2, 3)]


@pytest.mark.parametrize("n", range(1, 11))
def test_catalan_counts(n):
    fs = enumerate_hessenberg(n)
    assert len(fs) == catalan(n) == catalan_formula(n)
    assert len({f.values for f in fs}) == len(fs)
    assert [f.values for f in fs] == sorted(f.values for f in fs)


def test_precedes_examples():
    f = make_hessenberg((2, 3, 4, 4))
    assert precedes(f, 1, 3)
    assert not precedes(f, 1, 2)
    assert not any(precedes(f, i, i) for i in range(1, 5))
    with pytest.raises(IndexError):
        precedes(f, 0, 2)


def test_bounce_examples():
    bd = bounce_data(make_hessenberg((2, 3, 4, 4)))
    assert bd.bounce_number == 2 and bd.parts == ((1, 2), (3, 4))
    bd = bounce_data(make_hessenberg((2, 3, 5, 6, 7, 8, 8, 8)))
    assert bd.bounce_number == 3 and bd.parts == ((1, 2), (3, 4, 5), (6, 7, 8))
    bd = bounce_data(make_hessenberg((1, 2, 3)))
    assert bd.parts == ((1,), (2,), (3,))


def test_graph_edges_examples():
    assert graph_edges(make_hessenberg((2, 3, 4, 4))) == {(1, 2), (2, 3), (3, 4)}
    assert graph_edges(make_hessenberg((4, 4, 4, 4))) == {(i, j) for i in range(1, 5) for j in range(i + 1, 5)}
    assert graph_edges(make_hessenberg((1, 3, 4, 4))) == {(2, 3), (3, 4)}


def test_square_below_path_examples():
    f = make_hessenberg((2, 3, 4, 4))
    assert square_below_path(f, 1, 2)
    assert not square_below_path(f, 1, 3)
    g = make_hessenberg((4, 4, 4, 4))
    assert all(square_below_path(g, i, j) for i in range(1, 5) for j in range(i + 1, 5))
    with pytest.raises(ValueError):
        square_below_path(f, 2, 2)


def test_dyck_word():
    assert dyck_word(make_hessenberg((2, 3, 4, 4))) == "NNENENEE"
    assert dyck_word(make_hessenberg((1, 2, 3))) == "NENENE"


@given(hessenberg())
def test_order_table_matches_definition(f):
    n = f.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            assert precedes(f, i, j) == prec(f, i, j)


@given(hessenberg())
def test_bounce_points_follow_recursion(f):
    bd = bounce_data(f)
    assert list(bd.points) == naive_bounce(f)
    assert [x for part in bd.parts for x in part] == list(range(1, f.n + 1))
    assert bd.points[-1] == f.n


@given(hessenberg())
def test_edges_are_incomparable_pairs(f):
    assert graph_edges(f) == set(edges(f))
    for i, j in graph_edges(f):
        assert not precedes(f, i, j) and not precedes(f, j, i)


@settings(max_examples=200)
@given(hessenberg())
def test_order_properties(f):
    for name, check in order_checks.ALL_CHECKS.items():
        assert check(f) == [], name


@given(hessenberg(max_n=10))
def test_longest_chain_is_bounce_number(f):
    assert longest_chain(f) == bounce_data(f).bounce_number
