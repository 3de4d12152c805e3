import pytest
from hypothesis import given
from hypothesis import strategies as st

from corpus import intro_quiver, path_quiver
from quiverweyl.errors import InputError
from quiverweyl.quiver import (
    Quiver,
    QuiverSetting,
    cartan_data,
    cartan_pairing,
    double_quiver,
    p_value,
    ringel_pairing,
    support_connected,
)


def test_double_quiver_adds_reverse_arrows():
    dq = double_quiver(Quiver(("1", "2"), (("1", "2"),)))
    assert sorted(dq.arrows) == [("1", "2"), ("2", "1")]
    assert dq.starred == (False, True)
    assert dq.names == ("a0", "a0*")


def test_double_quiver_of_loop_has_two_loops():
    dq = double_quiver(Quiver(("v",), (("v", "v"),)))
    assert dq.quiver.loops("v") == 2


def test_double_quiver_of_empty_quiver():
    dq = double_quiver(Quiver(("1", "2")))
    assert dq.vertices == ("1", "2") and dq.arrows == ()


def test_intro_cartan_matrix():
    cd = cartan_data(intro_quiver())
    assert cd.cartan == ((2, -1, 0), (-1, 0, -1), (0, -1, 2))
    assert cd.ringel[0][1] == -1 and cd.ringel[1][0] == 0
    assert cd.ringel[1][1] == 0


@pytest.mark.parametrize(
    "x, y, expected",
    [((1, 0, 0), (0, 1, 0), -1), ((1, 0, 0), (1, 0, 0), 2), ((1, 2, 1), (1, 2, 1), -4)],
)
def test_intro_pairings(x, y, expected):
    assert cartan_pairing(cartan_data(intro_quiver()), x, y) == expected


@pytest.mark.parametrize("alpha, expected", [((1, 0, 0), 0), ((0, 1, 0), 1), ((1, 2, 1), 3)])
def test_p_value(alpha, expected):
    assert p_value(cartan_data(intro_quiver()), alpha) == expected


@pytest.mark.parametrize("loops", [0, 1, 2, 3])
def test_p_of_vertex_simple_counts_loops(loops):
    q = Quiver(("0", "1"), (("0", "0"),) * loops + (("0", "1"),))
    assert p_value(cartan_data(q), (1, 0)) == loops


def test_mapping_vectors_accepted_and_checked():
    cd = cartan_data(intro_quiver())
    assert cartan_pairing(cd, {"1": 1, "2": 0, "3": 0}, {"1": 0, "2": 1, "3": 0}) == -1
    with pytest.raises(InputError):
        cartan_pairing(cd, {"1": 1, "9": 0}, (0, 1, 0))
    with pytest.raises(InputError):
        cartan_pairing(cd, (1, 0), (0, 1, 0))


@pytest.mark.parametrize("a, expected", [((1, 0, 1), False), ((1, 1, 1), True), ((0, 1, 0), True), ((0, 0, 0), False)])
def test_support_connected(a, expected):
    assert support_connected(path_quiver(3), a) is expected


def test_quiver_validation():
    with pytest.raises(InputError):
        Quiver(("1", "1"))
    with pytest.raises(InputError):
        Quiver(("1",), (("1", "2"),))


def test_relabel_keeps_arrow_order():
    q = intro_quiver().relabel({"1": "x", "2": "y", "3": "z"}, ["z", "x", "y"])
    assert q.vertices == ("z", "x", "y")
    assert q.arrows == (("x", "y"), ("y", "z"), ("y", "y"))


arrow_lists = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3)), max_size=7)
vectors = st.tuples(*[st.integers(-3, 3)] * 4)


@given(arrow_lists, vectors, vectors)
def test_cartan_is_symmetrized_ringel(arrows, x, y):
    q = Quiver(("0", "1", "2", "3"), tuple((str(a), str(b)) for a, b in arrows))
    cd = cartan_data(q)
    assert cartan_pairing(cd, x, y) == cartan_pairing(cd, y, x)
    assert cartan_pairing(cd, x, y) == ringel_pairing(cd, x, y) + ringel_pairing(cd, y, x)


@given(arrow_lists)
def test_cartan_is_two_minus_double_adjacency(arrows):
    q = Quiver(("0", "1", "2", "3"), tuple((str(a), str(b)) for a, b in arrows))
    dq = double_quiver(q).quiver
    cd = cartan_data(q)
    for i in range(4):
        for j in range(4):
            adjacency = dq.arrow_count(str(i), str(j))
            assert cd.cartan[i][j] == 2 * (i == j) - adjacency


@given(arrow_lists, vectors, vectors, vectors)
def test_cartan_bilinear(arrows, x, y, z):
    q = Quiver(("0", "1", "2", "3"), tuple((str(a), str(b)) for a, b in arrows))
    cd = cartan_data(q)
    xz = tuple(a + b for a, b in zip(x, z))
    assert cartan_pairing(cd, xz, y) == cartan_pairing(cd, x, y) + cartan_pairing(cd, z, y)


def test_setting_vector_coercion():
    s = QuiverSetting(intro_quiver(), {"1": 1, "2": 2, "3": 1}, {"1": -1, "2": -1, "3": 3})
    assert s.alpha == (1, 2, 1) and s.theta == (-1, -1, 3)
    assert s.p(s.alpha) == 3
