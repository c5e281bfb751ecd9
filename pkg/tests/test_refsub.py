from __future__ import annotations

import pytest

from coxcent.core import CoxeterSystem, is_positive
from coxcent.errors import NotFiniteType, PreconditionError, UnsupportedOrder
from coxcent.field import FieldElem
from coxcent.graph import INF, CoxeterGraph, classify_components, graph_from_type, is_finite_type
from coxcent.refsub import (
    canonical_simple_system,
    gram_of,
    induced_coxeter_matrix,
    is_positive_definite,
    leading_minors,
    order_from_inner,
    perp_positive_roots,
    reflect_along,
    subsystem_positive_roots,
)


def system(name: str) -> CoxeterSystem:
    return CoxeterSystem(graph_from_type(name))


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_order_from_inner_inverts_the_form(m: int) -> None:
    W = CoxeterSystem(graph_from_type(f"I2({m})") if m != 3 else graph_from_type("A2"))
    assert order_from_inner(W.inner(W.simple[0], W.simple[1])) == m


def test_order_from_inner_edge_cases() -> None:
    assert order_from_inner(FieldElem(-1)) == INF
    assert order_from_inner(FieldElem(-3)) == INF
    assert order_from_inner(FieldElem(1) / 10) is None
    with pytest.raises(UnsupportedOrder):
        order_from_inner(FieldElem(-1) / 10)


def test_e6_perp_of_r1_is_a5() -> None:
    W = system("E6")
    perp = perp_positive_roots(W, range(6), [0])
    assert len(perp) == 15
    pi = canonical_simple_system(W, perp)
    assert len(pi) == 5
    g = induced_coxeter_matrix(W, pi)
    [(_, ft)] = classify_components(g, range(5))
    assert ft.name == "A5"
    assert sorted(subsystem_positive_roots(W, pi)) == sorted(perp)


def test_d4_perp_of_branch_node() -> None:
    W = system("D4")
    perp = perp_positive_roots(W, range(4), [1])
    pi = canonical_simple_system(W, perp)
    g = induced_coxeter_matrix(W, pi)
    assert len(perp) == 3 and len(pi) == 3
    assert [ft.name for _, ft in classify_components(g, range(3))] == ["A1", "A1", "A1"]


def test_perp_roots_are_orthogonal_and_positive() -> None:
    W = system("B4")
    for K in ([0], [3], [0, 2]):
        for v in perp_positive_roots(W, range(4), K):
            assert is_positive(v)
            assert all(not W.pairing(s, v)._nz for s in K)


def test_reflect_along_is_an_involution() -> None:
    W = system("H3")
    roots = W.positive_roots()
    for b in roots[:5]:
        for v in roots:
            assert reflect_along(W, b, reflect_along(W, b, v)) == v


def test_induced_matrix_of_simple_roots_is_the_graph() -> None:
    g = CoxeterGraph.from_edges(4, {(0, 1): 5, (1, 2): INF, (2, 3): 6})
    W = CoxeterSystem(g)
    assert induced_coxeter_matrix(W, W.simple) == g


def test_induced_matrix_rejects_positive_pairs() -> None:
    W = system("A2")
    with pytest.raises(PreconditionError):
        induced_coxeter_matrix(W, [W.simple[0], W.positive_roots()[-1]])


def test_infinite_reflection_subgroup_is_refused() -> None:
    W = CoxeterSystem(CoxeterGraph.from_edges(2, {(0, 1): INF}))
    with pytest.raises(NotFiniteType):
        subsystem_positive_roots(W, W.simple)


def test_gram_minors() -> None:
    for name in ("A3", "B3", "H3", "F4"):
        W = system(name)
        assert is_positive_definite(gram_of(W, W.simple))
    affine = CoxeterSystem(CoxeterGraph.from_edges(3, {(0, 1): 3, (1, 2): 3, (0, 2): 3}))
    minors = leading_minors(gram_of(affine, affine.simple))
    assert minors[-1] == 0
    assert not is_positive_definite(gram_of(affine, affine.simple))


def test_canonical_simple_system_of_parabolic_is_simple_roots() -> None:
    W = system("E7")
    J = [0, 2, 3, 4]
    assert sorted(canonical_simple_system(W, W.positive_roots(J))) == sorted(W.simple[s] for s in J)
    assert is_finite_type(W.graph, J)
