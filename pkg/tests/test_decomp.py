from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxcent.centralizer import build_groupoid, y_loop_generators
from coxcent.core import CoxeterSystem
from coxcent.decomp import (
    NARROW,
    WIDE,
    check_shift,
    is_standard,
    render_decomposition,
    simplify,
    standard_decomposition,
    verify_semi_standard,
)
from coxcent.errors import PreconditionError
from coxcent.graph import CoxeterGraph, graph_from_type, parse_graph


def a3_plus_a1() -> CoxeterSystem:
    return CoxeterSystem(CoxeterGraph.from_edges(4, {(0, 1): 3, (1, 2): 3}))


def test_single_wide_factor() -> None:
    W = a3_plus_a1()
    u = W.w0({0, 1, 2}) * W.w0({0, 2})
    d = standard_decomposition(W, u, (0, 3), (2, 3), {2})
    assert len(d) == 1
    [f] = d.factors
    assert (f.t, f.K, f.kind) == (1, frozenset({0, 1, 2}), WIDE)
    assert d.ys == [(0, 3), (2, 3)] and d.Js == [frozenset({2}), frozenset({0})]
    assert d.product() == u
    assert verify_semi_standard(d) == (True, [])
    assert is_standard(d)


def test_check_shift() -> None:
    W = a3_plus_a1()
    u = W.w0({0, 1, 2}) * W.w0({0, 2})
    d = standard_decomposition(W, u, (0, 3), (2, 3), {2})
    assert check_shift(d, 3, 2, 0) == (True, [])
    ok, problems = check_shift(d, 0, 2, 0)
    assert not ok and all(p.startswith("precondition:") for p in problems)
    ok, problems = check_shift(d, 3, 1, 0)
    assert not ok and any("not in J0" in p for p in problems)


def test_identity_has_empty_decomposition() -> None:
    W = CoxeterSystem(graph_from_type("D7"))
    d = standard_decomposition(W, W.identity, (0, 1, 2), (0, 1, 2), {4})
    assert len(d) == 0 and is_standard(d)
    assert render_decomposition(d) == "i\tkind\tt\tK\tlength\tword\n"


def test_element_outside_Y_is_rejected() -> None:
    W = CoxeterSystem(graph_from_type("A3"))
    with pytest.raises(PreconditionError, match="not in C"):
        standard_decomposition(W, W.simple_reflection(0), (0,), (0,), set())
    with pytest.raises(PreconditionError, match="different lengths"):
        standard_decomposition(W, W.identity, (0,), (0, 1), set())
    with pytest.raises(PreconditionError, match="not a simple root"):
        standard_decomposition(W, W.from_word([0, 1]), (0,), (1,), {2})
    with pytest.raises(PreconditionError, match="not in Y"):
        standard_decomposition(W, W.simple_reflection(2), (0,), (0,), set())


def test_narrow_factor_and_simplify() -> None:
    # swapping the ends of A3 changes neither [y] nor J, so simplify removes the factor
    W = CoxeterSystem(graph_from_type("A3"))
    u = W.w0({0, 1, 2}) * W.w0({0, 2})
    d = standard_decomposition(W, u, (0, 2), (2, 0), set())
    assert [f.kind for f in d.factors] == [NARROW]
    assert len(simplify(d)) == 0


def test_d7_example_metadata() -> None:
    W = CoxeterSystem(graph_from_type("D7"))
    words = [(2, 3, 4, 5, 1, 2, 3, 4), (3, 4, 5, 6), (7, 5, 4, 6, 5, 7), (6, 5, 4, 3)]
    omegas = [W.from_word(s - 1 for s in w) for w in words]
    u = omegas[3] * omegas[2] * omegas[1] * omegas[0]
    d = standard_decomposition(W, u, (0, 1, 2), (4, 3, 2), {4})
    assert [f.element for f in d.factors] == omegas
    assert [f.kind for f in d.factors] == [WIDE, NARROW, NARROW, NARROW]
    assert sum(f.length for f in d.factors) == u.length() == 22
    assert is_standard(d)
    s = simplify(d)
    assert len(s) == 3 and not is_standard(s)
    ok, problems = verify_semi_standard(s)
    assert ok, problems
    lines = render_decomposition(d).splitlines()
    assert lines[1].split("\t")[:5] == ["0", "W", "4", "{1,2,3,4,5}", "8"]


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32))
def test_loop_generators_decompose(seed: int) -> None:
    rng = random.Random(seed)
    text = rng.choice([
        "nodes 5\nedge 1 2 3\nedge 2 3 3\nedge 1 3 3\n",
        "nodes 6\nedge 1 2 3\nedge 2 3 3\nedge 3 4 3\nedge 4 1 3\nedge 5 6 4\n",
    ])
    W = CoxeterSystem(parse_graph(text))
    base = (rng.randrange(W.n),)
    gpd = build_groupoid(W, base, max_nodes=50, max_edges=200)
    for gen in y_loop_generators(gpd)[:3]:
        d = standard_decomposition(W, gen.element, base, base, set())
        assert d.product() == gen.element
        assert verify_semi_standard(d)[0]
        assert is_standard(d)
