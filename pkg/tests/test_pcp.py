from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from smallpfa import pcp
from smallpfa.pcp import PcpInstance, WordPair, apply, bounded_solve, gpcp, is_solution, reverse

CLASSIC = PcpInstance("01", [("1", "101"), ("10", "00"), ("011", "11")])


def brute_force(instance, max_len):
    """Shortlex-first solution by plain enumeration, independent of the solver."""
    for m in range(1, max_len + 1):
        for seq in product(range(1, instance.k + 1), repeat=m):
            top = "".join(instance.pairs[i - 1].top for i in seq)
            bottom = "".join(instance.pairs[i - 1].bottom for i in seq)
            if top == bottom:
                return seq
    return None


words = st.text(alphabet="ab", max_size=3)
instances = st.lists(st.tuples(words, words), min_size=1, max_size=3).map(lambda ps: PcpInstance("ab", ps))


def test_apply_examples():
    assert apply(CLASSIC, [1, 3, 2, 3]) == ("101110011", "101110011")
    assert apply(PcpInstance("a", [("a", "a")]), [1]) == ("a", "a")
    assert apply(PcpInstance("01", [("1", "101"), ("10", "00")]), [2]) == ("10", "00")


def test_apply_index_out_of_range():
    with pytest.raises(IndexError):
        apply(CLASSIC, [4])
    with pytest.raises(IndexError):
        apply(CLASSIC, [0])


def test_is_solution_examples():
    assert is_solution(CLASSIC, [1, 3, 2, 3])
    assert not is_solution(CLASSIC, [1])
    assert not is_solution(CLASSIC, [])
    g = gpcp("a", [("a", "a"), ("a", "a"), ("a", "a")])
    assert not is_solution(g, [2, 1])
    assert not is_solution(g, [1, 1, 2])
    assert is_solution(g, [1, 3, 2])
    assert is_solution(g, [1, 2])


def test_instance_validation():
    with pytest.raises(ValueError):
        PcpInstance("ab", [])
    with pytest.raises(ValueError):
        PcpInstance("ab", [("c", "a")])
    with pytest.raises(ValueError):
        PcpInstance("aa", [("a", "a")])
    with pytest.raises(ValueError):
        PcpInstance("ab", [("a", "a")], start_index=2)
    with pytest.raises(ValueError):
        gpcp("a", [("a", "a")])


def test_bounded_solve_examples():
    r = bounded_solve(CLASSIC, max_steps=6, max_overhang=8)
    assert r.status == "solved" and r.solution == (1, 3, 2, 3)
    r = bounded_solve(PcpInstance("ab", [("a", "b")]))
    assert r.status == "closed" and r.solution is None and not r
    assert bounded_solve(PcpInstance("a", [("a", "a")])).solution == (1,)


def test_bounded_solve_limits():
    # (a, aa) keeps growing the overhang, so the search can only be cut off
    grow = PcpInstance("a", [("a", "aa")])
    assert bounded_solve(grow, max_steps=5, max_overhang=64).status == "bounded"
    assert bounded_solve(grow, max_steps=100, max_overhang=3).status == "bounded"
    with pytest.raises(ValueError):
        bounded_solve(CLASSIC, max_steps=0)


def test_reverse_examples():
    assert reverse(PcpInstance("ab", [("ab", "b")])).pairs == (WordPair("ba", "b"),)
    pal = PcpInstance("ab", [("aba", "aa")])
    assert reverse(pal) == pal
    r = reverse(CLASSIC)
    assert is_solution(r, [3, 2, 3, 1])
    assert bounded_solve(r, 6, 8).solution == (3, 2, 3, 1)
    marked = PcpInstance("a", [("a", "a"), ("a", "a")], start_index=1, end_index=2)
    assert (reverse(marked).start_index, reverse(marked).end_index) == (2, 1)
    with pytest.raises(ValueError):
        reverse(gpcp("a", [("a", "a"), ("a", "a")]))


def test_gpcp_search_respects_shape():
    # the plain instance is solved by [3] alone; the GPCP must go 1 ... 2
    g = gpcp("ab", [("a", "ab"), ("bb", "b"), ("b", "b")])
    r = bounded_solve(g, max_steps=6)
    assert r.solution == (1, 2)
    # here the rows rebalance after 1, 3 and the end pair (a, a) closes
    g2 = gpcp("ab", [("a", "ab"), ("a", "a"), ("ba", "a")])
    assert bounded_solve(g2, max_steps=6).solution == (1, 3, 2)


@given(instances, st.lists(st.integers(1, 3), min_size=1, max_size=6))
def test_reverse_preserves_solutions(inst, seq):
    seq = [min(i, inst.k) for i in seq]
    assert is_solution(inst, seq) == is_solution(reverse(inst), seq[::-1])


@given(instances)
def test_solver_agrees_with_brute_force(inst):
    r = bounded_solve(inst, max_steps=5, max_overhang=64)
    expected = brute_force(inst, 5)
    if r.status == "solved":
        assert is_solution(inst, r.solution)
        assert expected == r.solution
    else:
        assert expected is None
    if r.status == "closed":
        assert brute_force(inst, 7) is None


@given(instances)
def test_solutions_concatenate(inst):
    r = bounded_solve(inst, max_steps=4)
    if r:
        assert is_solution(inst, r.solution + r.solution)


def test_json_round_trip(tmp_path):
    marked = PcpInstance("01", CLASSIC.pairs, start_index=1, end_index=3)
    for inst in (CLASSIC, marked, gpcp("ab", [("a", "b"), ("b", "a")])):
        path = tmp_path / "i.json"
        pcp.dump(inst, path)
        assert pcp.load(path) == inst
    with pytest.raises(ValueError):
        pcp.from_json({"alphabet": ["a"]})
    with pytest.raises(ValueError):
        pcp.from_json({"alphabet": ["a"], "pairs": [{"top": "a", "bottom": "a"}], "kind": "mpcp"})
