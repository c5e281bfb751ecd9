"""Reflection subgroups generated by finite sets of roots.

The order of s_β s_γ is read off the inner product ⟨β,γ⟩: the value
-cos(π/m) gives m, and anything ≤ -1 gives ∞.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .core import DEFAULT_ROOT_CAP, CoxeterSystem, Vector, format_vector, is_negative, negate
from .errors import NonTerminating, NotFiniteType, PreconditionError, UnsupportedOrder
from .field import ZERO_ELEM, FieldElem, cos_pi_over
from .graph import INF, CoxeterGraph, is_finite_type

_MINUS_COS = {m: -cos_pi_over(m) for m in (2, 3, 4, 5, 6)}


def order_from_inner(ip: FieldElem) -> float | int | None:
    """Order of s_β s_γ given ⟨β,γ⟩; ``None`` if ⟨β,γ⟩ > 0 (not a root-basis pair)."""
    s = ip.sign()
    if s > 0:
        return None
    if s == 0:
        return 2
    if (ip + 1).sign() <= 0:
        return INF
    for m, v in _MINUS_COS.items():
        if ip == v:
            return m
    raise UnsupportedOrder(f"inner product {ip} is not -cos(pi/m) for m in 2..6")


def reflect_along(system: CoxeterSystem, beta: Vector, v: Vector) -> Vector:
    """s_β·v = v - 2⟨β,v⟩β."""
    k = system.inner(beta, v)
    if not k._nz:
        return v
    k = k * 2
    return tuple(a - k * b if b._nz else a for a, b in zip(v, beta))


def is_root_basis(system: CoxeterSystem, psi: Iterable[Vector]) -> bool:
    psi = list(psi)
    for i in range(len(psi)):
        for j in range(i + 1, len(psi)):
            if order_from_inner(system.inner(psi[i], psi[j])) is None:
                return False
    return True


def induced_coxeter_matrix(system: CoxeterSystem, psi: Sequence[Vector]) -> CoxeterGraph:
    """Coxeter matrix of the reflections along a root basis, in the given order."""
    psi = list(psi)
    k = len(psi)
    co = [system.covector(v) for v in psi]
    rows = [[1] * k for _ in range(k)]
    for i in range(k):
        u = [(s, c) for s, c in enumerate(psi[i]) if c._nz]
        for j in range(i + 1, k):
            cj = co[j]
            ip = ZERO_ELEM
            for s, c in u:
                if cj[s]._nz:
                    ip = ip + c * cj[s]
            m = order_from_inner(ip)
            if m is None:
                raise PreconditionError(
                    f"{format_vector(psi[i])} and {format_vector(psi[j])} have positive inner product"
                )
            rows[i][j] = rows[j][i] = m
    return CoxeterGraph(k, tuple(tuple(r) for r in rows))


def subsystem_positive_roots(
    system: CoxeterSystem, psi: Iterable[Vector], cap: int = DEFAULT_ROOT_CAP
) -> list[Vector]:
    """Positive roots of W(Ψ)·Ψ, by closure; raises if the closure exceeds ``cap``."""
    psi = list(dict.fromkeys(psi))
    if psi and is_root_basis(system, psi):
        if not is_finite_type(induced_coxeter_matrix(system, psi), range(len(psi))):
            raise NotFiniteType("the reflection subgroup is not finite")
    seen = dict.fromkeys(psi)
    queue = list(psi)
    while queue:
        v = queue.pop()
        for beta in psi:
            w = reflect_along(system, beta, v)
            if is_negative(w):
                w = negate(w)
            if w not in seen:
                if len(seen) >= cap:
                    raise NonTerminating(f"reflection closure exceeded {cap} roots")
                seen[w] = None
                queue.append(w)
    return sorted(seen, key=root_order_key)


def canonical_simple_system(
    system: CoxeterSystem, psi: Iterable[Vector], cap: int = DEFAULT_ROOT_CAP
) -> list[Vector]:
    """Π(Ψ): the roots γ of (W(Ψ)·Ψ)^+ whose reflection keeps all other positives positive."""
    pos = subsystem_positive_roots(system, psi, cap)
    out = []
    for gamma in pos:
        if all(
            v == gamma or not is_negative(reflect_along(system, gamma, v)) for v in pos
        ):
            out.append(gamma)
    return out


def perp_positive_roots(system: CoxeterSystem, J: Iterable[int], K: Iterable[int]) -> list[Vector]:
    """(Φ_J^{⊥K})^+: positive roots of the finite parabolic Φ_J orthogonal to every α_s, s ∈ K."""
    K = list(K)
    return [v for v in system.positive_roots(J) if system.is_orthogonal_to(v, K)]


def gram_of(system: CoxeterSystem, roots: Sequence[Vector]) -> list[list[FieldElem]]:
    return [[system.inner(a, b) for b in roots] for a in roots]


def leading_minors(M: Sequence[Sequence[FieldElem]]) -> list[FieldElem]:
    """Leading principal minors, each by exact elimination with row pivoting."""
    return [_minor_by_pivoting(M, k) for k in range(1, len(M) + 1)]


def _minor_by_pivoting(M: Sequence[Sequence[FieldElem]], size: int) -> FieldElem:
    A = [list(row[:size]) for row in M[:size]]
    det = FieldElem(1)
    for i in range(size):
        p = next((r for r in range(i, size) if A[r][i]._nz), None)
        if p is None:
            return FieldElem(0)
        if p != i:
            A[i], A[p] = A[p], A[i]
            det = -det
        det = det * A[i][i]
        for r in range(i + 1, size):
            if A[r][i]._nz:
                f = A[r][i] / A[i][i]
                A[r] = [a - f * b for a, b in zip(A[r], A[i])]
    return det


def is_positive_definite(M: Sequence[Sequence[FieldElem]]) -> bool:
    return all(m.sign() > 0 for m in leading_minors(M))


class _Asc:
    __slots__ = ("x",)

    def __init__(self, x: FieldElem) -> None:
        self.x = x

    def __lt__(self, other: _Asc) -> bool:
        return self.x < other.x

    def __eq__(self, other: object) -> bool:
        return isinstance(other, _Asc) and self.x == other.x


class _Desc(_Asc):
    __slots__ = ()

    def __lt__(self, other: _Asc) -> bool:
        return self.x > other.x


def root_order_key(v: Vector) -> tuple:
    """Deterministic order: coefficient sum ascending, then coordinates descending."""
    total = FieldElem(0)
    for c in v:
        total = total + c
    return (_Asc(total),) + tuple(_Desc(c) for c in v)
