"""Factorizations of elements of Y_{z,y} into elementary transformations.

Each factor is ``ω = w0(K) w0(K ∖ t)`` with ``K = ([y] ∪ J)_{~t}``; it
carries the tuple ``y`` and the set ``J`` to new ones.  A factor is *wide*
when ``K`` meets ``J ∖ [y]`` and *narrow* otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .centralizer import _elementary_pair, is_in_Y, perp_inversions, simple_index
from .core import CoxeterSystem, Element, format_vector, is_negative
from .errors import InvariantViolation, PreconditionError
from .graph import format_set, format_tuple, is_adjacent, is_apart, is_finite_type, tilde_closure

WIDE, NARROW = "wide", "narrow"


@dataclass(frozen=True)
class Factor:
    element: Element
    y: tuple[int, ...]
    t: int
    J: frozenset[int]
    K: frozenset[int]
    y_next: tuple[int, ...]
    J_next: frozenset[int]

    @property
    def kind(self) -> str:
        return WIDE if self.K & (self.J - set(self.y)) else NARROW

    @property
    def word(self) -> tuple[int, ...]:
        return self.element.reduced_word()

    @property
    def length(self) -> int:
        return self.element.length()


@dataclass
class Decomposition:
    """ω_{n-1} ··· ω_1 ω_0, stored in application order ω_0 first."""

    system: CoxeterSystem
    y0: tuple[int, ...]
    J0: frozenset[int]
    factors: list[Factor]

    def __len__(self) -> int:
        return len(self.factors)

    @property
    def ys(self) -> list[tuple[int, ...]]:
        return [self.y0] + [f.y_next for f in self.factors]

    @property
    def Js(self) -> list[frozenset[int]]:
        return [self.J0] + [f.J_next for f in self.factors]

    def product(self) -> Element:
        u = self.system.identity
        for f in self.factors:
            u = f.element * u
        return u


def _image_set(w: Element, J: Iterable[int]) -> frozenset[int] | None:
    out = set()
    for s in J:
        t = simple_index(w.cols[s])
        if t is None:
            return None
        out.add(t)
    return frozenset(out)


def _image_tuple(w: Element, y: Sequence[int]) -> tuple[int, ...] | None:
    out = []
    for s in y:
        t = simple_index(w.cols[s])
        if t is None:
            return None
        out.append(t)
    return tuple(out)


def _factor(system: CoxeterSystem, y: tuple[int, ...], J: frozenset[int], t: int,
            element: Element | None = None) -> Factor:
    K = tilde_closure(system.graph, set(y) | J, {t})
    if element is None:
        if not is_finite_type(system.graph, K):
            raise InvariantViolation(f"support {format_set(K)} is not of finite type")
        element = _elementary_pair(system, K, t)[0]
    y_next = _image_tuple(element, y)
    J_next = _image_set(element, J)
    if y_next is None or J_next is None:
        raise InvariantViolation(f"factor at pivot {t + 1} does not map simple roots to simple roots")
    return Factor(element, y, t, J, K, y_next, J_next)


def _require_Y(system: CoxeterSystem, u: Element, y: tuple[int, ...], z: tuple[int, ...]) -> None:
    if len(y) != len(z):
        raise PreconditionError("y and z have different lengths")
    for a, b in zip(z, y):
        if u.cols[b] != system.simple[a]:
            raise PreconditionError(
                f"u·α_{b + 1} = {format_vector(u.cols[b])}, expected α_{a + 1}: u is not in C_{{z,y}}"
            )
    bad = perp_inversions(system, u, y)
    if bad:
        raise PreconditionError(
            f"u inverts {format_vector(bad[0])}, which is orthogonal to {format_set(y)}: u is not in Y_{{z,y}}"
        )


def standard_decomposition(
    system: CoxeterSystem, u: Element, y: Sequence[int], z: Sequence[int], J: Iterable[int]
) -> Decomposition:
    """Greedy decomposition: repeatedly split off the factor at the least right descent t."""
    y, z, J = tuple(y), tuple(z), frozenset(J)
    _require_Y(system, u, y, z)
    for s in sorted(J):
        if simple_index(u.cols[s]) is None:
            raise PreconditionError(f"u·α_{s + 1} = {format_vector(u.cols[s])} is not a simple root")
    total = u.length()
    factors = []
    cur, cy, cJ = u, y, J
    while not cur.is_identity():
        t = next(s for s in range(system.n) if is_negative(cur.cols[s]))
        f = _factor(system, cy, cJ, t)
        factors.append(f)
        cur = cur * f.element.inverse()
        cy, cJ = f.y_next, f.J_next
        if len(factors) > total:
            raise InvariantViolation("decomposition does not terminate")
    d = Decomposition(system, y, J, factors)
    if cy != z:
        raise InvariantViolation(f"decomposition ends at {format_tuple(cy)}, expected {format_tuple(z)}")
    if sum(f.length for f in factors) != total:
        raise InvariantViolation("factor lengths do not add up to the length of u")
    return d


def verify_semi_standard(d: Decomposition) -> tuple[bool, list[str]]:
    """Check every defining condition of a semi-standard decomposition; report violations."""
    system, g = d.system, d.system.graph
    problems: list[str] = []
    y, J = d.y0, d.J0
    for i, f in enumerate(d.factors):
        tag = f"factor {i}"
        if f.y != y or f.J != J:
            problems.append(f"{tag}: metadata does not continue the previous factor")
        ys = set(f.y)
        if f.t in ys or f.t in f.J:
            problems.append(f"{tag}: pivot {f.t + 1} lies in [y] or J")
        if not is_adjacent(g, {f.t}, ys):
            problems.append(f"{tag}: pivot {f.t + 1} is not adjacent to {format_set(ys)}")
        K = tilde_closure(g, ys | f.J, {f.t})
        if K != f.K:
            problems.append(f"{tag}: support {format_set(f.K)} should be {format_set(K)}")
        if not is_finite_type(g, K):
            problems.append(f"{tag}: support {format_set(K)} is not of finite type")
        elif f.element != _elementary_pair(system, K, f.t)[0]:
            problems.append(f"{tag}: element is not w0(K) w0(K - t)")
        if not is_in_Y(f.element, f.y_next, f.y):
            problems.append(f"{tag}: element is not in Y_{{y',y}}")
        if _image_set(f.element, f.J) != f.J_next:
            problems.append(f"{tag}: element does not carry Pi_J onto Pi_J'")
        rest = sorted(f.K - {f.t})
        if all(f.element.cols[s] == system.simple[s] for s in rest):
            problems.append(f"{tag}: fixes every simple root of K - t")
        y, J = f.y_next, f.J_next
    return not problems, problems


def is_standard(d: Decomposition) -> bool:
    ok, _ = verify_semi_standard(d)
    return ok and sum(f.length for f in d.factors) == d.product().length()


def simplify(d: Decomposition) -> Decomposition:
    """Drop the factors that change neither the underlying set of y nor J."""
    kept = [f for f in d.factors if not (set(f.y_next) == set(f.y) and f.J_next == f.J)]
    factors = []
    y, J = d.y0, d.J0
    for f in kept:
        nf = _factor(d.system, y, J, f.t, f.element)
        factors.append(nf)
        y, J = nf.y_next, nf.J_next
    return Decomposition(d.system, d.y0, d.J0, factors)


def check_shift(d: Decomposition, r: int, s: int, s_prime: int) -> tuple[bool, list[str]]:
    """Check that u fixes α_r and lies in Y_{z',z}, where z, z' are y0, y_n with r replaced by s, s'.

    Preconditions (r ∈ [y0], s ∈ J0, s' ∈ J_n, supports apart from r,
    u·α_s = α_{s'}) are reported with a ``precondition:`` prefix.
    """
    system = d.system
    u = d.product()
    yn, Jn = d.ys[-1], d.Js[-1]
    pre = []
    if r not in d.y0:
        pre.append(f"precondition: {r + 1} is not in [y0]")
    if s not in d.J0:
        pre.append(f"precondition: {s + 1} is not in J0")
    if s_prime not in Jn:
        pre.append(f"precondition: {s_prime + 1} is not in J_n")
    for i, f in enumerate(d.factors):
        if not is_apart(system.graph, f.K, {r}):
            pre.append(f"precondition: support of factor {i} is not apart from {r + 1}")
    if u.cols[s] != system.simple[s_prime]:
        pre.append(f"precondition: u·α_{s + 1} is not α_{s_prime + 1}")
    if pre:
        return False, pre
    problems = []
    if r not in yn:
        problems.append(f"{r + 1} is not in [y_n]")
    if u.cols[r] != system.simple[r]:
        problems.append(f"u moves α_{r + 1}")
    z = tuple(s if a == r else a for a in d.y0)
    z2 = tuple(s_prime if a == r else a for a in yn)
    if not is_in_Y(u, z2, z):
        problems.append(f"u is not in Y_{{{format_tuple(z2)},{format_tuple(z)}}}")
    return not problems, problems


def render_decomposition(d: Decomposition) -> str:
    lines = ["i\tkind\tt\tK\tlength\tword"]
    for i, f in enumerate(d.factors):
        word = " ".join(f"r{s + 1}" for s in f.word) or "1"
        lines.append(f"{i}\t{f.kind[0].upper()}\t{f.t + 1}\t{format_set(f.K)}\t{f.length}\t{word}")
    return "\n".join(lines) + "\n"
