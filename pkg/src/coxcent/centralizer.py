"""Centralizers of parabolic subgroups via the groupoid of generator tuples.

Nodes are injective tuples of generators.  A move ``(y, t)`` with
``[y]_{~t}`` of finite type carries the element
``w = w0(K) w0(K ∖ t)`` (``K = [y]_{~t}``) and sends ``y`` to the tuple
read off from ``w·α_{y_λ}``.  Moves that return to ``y`` are reflections
along a root orthogonal to ``[y]``; the others are groupoid edges.  Loops
at the base tuple generate Y_I, and transporting the reflection roots
back to the base tuple yields the simple system Π^I of W^⊥I.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import (
    DEFAULT_ROOT_CAP,
    CoxeterSystem,
    DepthWindow,
    Element,
    Vector,
    format_vector,
    inversion_set,
    is_negative,
    reflection,
    support,
)
from .errors import InvariantViolation, MoveUnavailable, PreconditionError
from .field import ONE
from .graph import (
    FiniteType,
    classify,
    components,
    format_set,
    format_tuple,
    is_A_gt1_free,
    is_finite_type,
    iota_bar,
    label_str,
    minus_one_type,
    tilde_closure,
)
from .refsub import induced_coxeter_matrix


DEFAULT_MAX_NODES = 5000
DEFAULT_MAX_EDGES = 20000


def simple_index(v: Vector) -> int | None:
    """s if v = α_s, else None."""
    hit = None
    for i, c in enumerate(v):
        if c._nz:
            if hit is not None or c != ONE:
                return None
            hit = i
    return hit


def _check_tuple(system: CoxeterSystem, x: Sequence[int]) -> tuple[int, ...]:
    x = tuple(x)
    if len(set(x)) != len(x) or any(not 0 <= s < system.n for s in x):
        raise PreconditionError(f"not an injective tuple of generators: {x}")
    return x


def _elementary_pair(system: CoxeterSystem, K: frozenset[int], s: int) -> tuple[Element, Element]:
    """(w0(K) w0(K∖s), its inverse), cached per system."""
    cache = system.__dict__.setdefault("_elementary", {})
    key = (K, s)
    hit = cache.get(key)
    if hit is None:
        a, b = system.w0(K), system.w0(K - {s})
        hit = cache[key] = (a * b, b * a)
    return hit


def elementary(system: CoxeterSystem, x: Sequence[int], s: int) -> tuple[Element, tuple[int, ...]]:
    """The element w_x^s and the tuple φ(x, s)."""
    x = _check_tuple(system, x)
    if s in x:
        raise PreconditionError(f"generator {s + 1} already lies in {format_tuple(x)}")
    K = tilde_closure(system.graph, x, {s})
    if not is_finite_type(system.graph, K):
        raise MoveUnavailable(f"{format_set(K)} is not of finite type")
    w, _ = _elementary_pair(system, K, s)
    return w, _image_tuple(w, x)


def _image_tuple(w: Element, x: Sequence[int]) -> tuple[int, ...]:
    y = []
    for s in x:
        t = simple_index(w.cols[s])
        if t is None:
            raise InvariantViolation(f"w·α_{s + 1} = {format_vector(w.cols[s])} is not a simple root")
        y.append(t)
    return tuple(y)


def perp_inversions(system: CoxeterSystem, w: Element, X: Iterable[int]) -> list[Vector]:
    """Roots of Φ[w] orthogonal to every α_s, s ∈ X."""
    X = list(X)
    return [v for v in inversion_set(w) if system.is_orthogonal_to(v, X)]


def gamma_root(system: CoxeterSystem, x: Sequence[int], s: int) -> Vector | None:
    """The positive root γ(x, s) with s_γ = w_x^s when the move is a self-loop, else None."""
    w, y = elementary(system, x, s)
    if y != tuple(x):
        return None
    found = perp_inversions(system, w, x)
    if len(found) != 1:
        raise InvariantViolation(f"expected one root orthogonal to {format_tuple(x)}, found {len(found)}")
    gamma = found[0]
    if reflection(system, gamma) != w:
        raise InvariantViolation(f"reflection along {format_vector(gamma)} differs from w_x^s")
    return gamma


def is_in_C(w: Element, x: Sequence[int], y: Sequence[int]) -> bool:
    """w·α_{y_λ} = α_{x_λ} for every λ."""
    if len(x) != len(y):
        raise PreconditionError("tuples of different lengths")
    simple = w.system.simple
    return all(w.cols[b] == simple[a] for a, b in zip(x, y))


def is_in_Y(w: Element, x: Sequence[int], y: Sequence[int]) -> bool:
    """w ∈ C_{x,y} and no inversion of w is orthogonal to all of Π_[y]."""
    return is_in_C(w, x, y) and not perp_inversions(w.system, w, y)


# groupoid ------------------------------------------------------------------------------


@dataclass
class Move:
    source: tuple[int, ...]
    t: int
    target: tuple[int, ...]
    element: Element
    inverse: Element
    tree: bool = False

    @property
    def is_loop(self) -> bool:
        return self.source == self.target


@dataclass
class Groupoid:
    system: CoxeterSystem
    base: tuple[int, ...]
    nodes: list[tuple[int, ...]]
    edges: list[Move]
    reflections: dict[tuple[int, ...], list[tuple[int, Vector]]]
    unavailable: dict[tuple[int, ...], list[int]]
    path: dict[tuple[int, ...], Element]
    path_inverse: dict[tuple[int, ...], Element]
    complete: bool
    limit_hit: str | None = None

    def out_moves(self, y: tuple[int, ...]) -> list[Move]:
        return [e for e in self.edges if e.source == y]


def build_groupoid(
    system: CoxeterSystem,
    base: Sequence[int],
    max_nodes: int = DEFAULT_MAX_NODES,
    max_edges: int = DEFAULT_MAX_EDGES,
    verify: bool = True,
) -> Groupoid:
    """Breadth-first exploration of all moves from ``base`` (discovery order, then ascending t)."""
    if max_nodes < 1 or max_edges < 0:
        raise PreconditionError("limits must be positive")
    base = _check_tuple(system, base)
    g = system.graph
    nodes = [base]
    seen = {base}
    path = {base: system.identity}
    path_inv = {base: system.identity}
    edges: list[Move] = []
    refl: dict[tuple[int, ...], list[tuple[int, Vector]]] = {base: []}
    unavailable: dict[tuple[int, ...], list[int]] = {base: []}
    complete = True
    limit_hit = None
    queue = deque([base])
    while queue and complete:
        y = queue.popleft()
        ys = set(y)
        for t in range(system.n):
            if t in ys:
                continue
            K = tilde_closure(g, y, {t})
            if not is_finite_type(g, K):
                unavailable[y].append(t)
                continue
            w, w_inv = _elementary_pair(system, K, t)
            z = _image_tuple(w, y)
            if z == y:
                refl[y].append((t, gamma_root(system, y, t)))
                continue
            if verify and perp_inversions(system, w, y):
                raise InvariantViolation(f"move {format_tuple(y)} -{t + 1}-> {format_tuple(z)} leaves Y")
            if len(edges) >= max_edges:
                complete, limit_hit = False, "edges"
                break
            move = Move(y, t, z, w, w_inv)
            if z not in seen:
                if len(nodes) >= max_nodes:
                    complete, limit_hit = False, "nodes"
                    break
                seen.add(z)
                nodes.append(z)
                refl[z] = []
                unavailable[z] = []
                move.tree = True
                path[z] = w * path[y]
                path_inv[z] = path_inv[y] * w_inv
                queue.append(z)
            edges.append(move)
    return Groupoid(system, base, nodes, edges, refl, unavailable, path, path_inv, complete, limit_hit)


@dataclass
class LoopGenerator:
    element: Element
    inverse: Element
    edge: Move


def y_loop_generators(groupoid: Groupoid, verify: bool = True) -> list[LoopGenerator]:
    """p_z⁻¹ · w · p_y for every non-tree edge y → z; identities and repeats dropped."""
    seen: set[Element] = set()
    out = []
    base = groupoid.base
    for e in groupoid.edges:
        if e.tree:
            continue
        gen = groupoid.path_inverse[e.target] * e.element * groupoid.path[e.source]
        if gen.is_identity() or gen in seen:
            continue
        inv = groupoid.path_inverse[e.source] * e.inverse * groupoid.path[e.target]
        if inv in seen:
            continue
        if verify and not is_in_Y(gen, base, base):
            raise InvariantViolation(f"loop generator from edge {format_tuple(e.source)} -> "
                                     f"{format_tuple(e.target)} is not in Y")
        seen.add(gen)
        out.append(LoopGenerator(gen, inv, e))
    return out


def pi_perp_generators(
    groupoid: Groupoid,
    generators: Sequence[LoopGenerator] | None = None,
    max_roots: int = DEFAULT_ROOT_CAP,
) -> tuple[list[Vector], bool]:
    """Candidate Π^I: transported reflection roots, closed under the loop generators.

    The flag is true only if the groupoid was explored completely and the
    closure reached a fixpoint within ``max_roots``.
    """
    if generators is None:
        generators = y_loop_generators(groupoid)
    found: dict[Vector, None] = {}
    queue: deque[Vector] = deque()

    def add(v: Vector) -> bool:
        if v in found:
            return True
        if is_negative(v):
            raise InvariantViolation(f"transported root {format_vector(v)} is negative")
        if len(found) >= max_roots:
            return False
        found[v] = None
        queue.append(v)
        return True

    for y in groupoid.nodes:
        for _, gamma in groupoid.reflections[y]:
            if not add(groupoid.path_inverse[y].act(gamma)):
                return list(found), False
    while queue:
        v = queue.popleft()
        for gen in generators:
            for h in (gen.element, gen.inverse):
                if not add(h.act(v)):
                    return list(found), False
    return list(found), groupoid.complete


@dataclass
class FinitePart:
    components: list[tuple[list[Vector], FiniteType | None]]

    @property
    def finite_roots(self) -> list[Vector]:
        return [r for roots, ft in self.components if ft is not None for r in roots]

    @property
    def infinite_roots(self) -> list[Vector]:
        return [r for roots, ft in self.components if ft is None for r in roots]


def finite_part(system: CoxeterSystem, roots: Sequence[Vector]) -> FinitePart:
    """Split a root basis into the components of its induced Coxeter graph and classify them."""
    roots = list(roots)
    if not roots:
        return FinitePart([])
    M = induced_coxeter_matrix(system, roots)
    comps = []
    for c in components(M, range(M.n)):
        members = sorted(c)
        comps.append(([roots[i] for i in members], classify(M, members)))
    return FinitePart(comps)


# verification ----------------------------------------------------------------------------


@dataclass
class Verdict:
    generator: int
    root: Vector
    fixed: bool
    image: Vector


@dataclass
class CentralizerReport:
    system: CoxeterSystem
    subset: frozenset[int]
    groupoid: Groupoid
    generators: list[LoopGenerator]
    perp_roots: list[Vector]
    perp_complete: bool
    finite: FinitePart
    verdicts: list[Verdict]
    hypothesis: bool
    commutation: list[tuple[int, frozenset[int], bool]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.groupoid.complete and self.perp_complete

    @property
    def conclusion(self) -> bool:
        return all(v.fixed for v in self.verdicts)

    @property
    def status(self) -> str:
        # a partial Π^I can mislabel components as finite, so only complete runs decide
        if not self.complete:
            return "TRUNCATED"
        if not self.conclusion:
            return "REFUTED" if self.hypothesis else "REFUTED-HYPOTHESIS-FALSE"
        return "VERIFIED"

    @property
    def exit_code(self) -> int:
        return {"VERIFIED": 0, "REFUTED": 1, "REFUTED-HYPOTHESIS-FALSE": 1, "TRUNCATED": 2}[self.status]


def verify_main_theorem(
    system: CoxeterSystem,
    I: Iterable[int],
    max_nodes: int = DEFAULT_MAX_NODES,
    max_edges: int = DEFAULT_MAX_EDGES,
    max_roots: int = DEFAULT_ROOT_CAP,
    verify: bool = True,
) -> CentralizerReport:
    """Check that every loop generator of Y_I fixes every finite-part root of Π^I."""
    I = frozenset(I)
    base = tuple(sorted(I))
    gpd = build_groupoid(system, base, max_nodes, max_edges, verify)
    gens = y_loop_generators(gpd, verify)
    roots, complete = pi_perp_generators(gpd, gens, max_roots)
    fp = finite_part(system, roots)
    verdicts = []
    for k, gen in enumerate(gens):
        for r in fp.finite_roots:
            img = gen.element.act(r)
            verdicts.append(Verdict(k, r, img == r, img))
    return CentralizerReport(
        system,
        I,
        gpd,
        gens,
        roots,
        complete,
        fp,
        verdicts,
        is_A_gt1_free(system.graph, I),
        commutation_checks(system, I, gens),
    )


def commutation_checks(
    system: CoxeterSystem, I: Iterable[int], gens: Sequence[LoopGenerator]
) -> list[tuple[int, frozenset[int], bool]]:
    """For each (-1)-type component C of I and loop generator g: does g commute with w0(C)?"""
    out = []
    for comp in components(system.graph, I):
        ft = classify(system.graph, comp)
        if ft is None or not minus_one_type(ft):
            continue
        z = system.w0(comp)
        for k, gen in enumerate(gens):
            out.append((k, comp, gen.element * z == z * gen.element))
    return out


def support_violations(
    system: CoxeterSystem, I: Iterable[int], depth: int = 12, cap: int = DEFAULT_ROOT_CAP
) -> tuple[list[Vector], bool]:
    """Roots up to ``depth`` orthogonal to Π_I whose support meets ῑ(I); plus the truncation flag."""
    I = list(I)
    window = system.roots_up_to_depth(depth, cap)
    return support_violations_in(system, I, window.roots), window.truncated


def support_violations_in(system: CoxeterSystem, I: Iterable[int], roots: Iterable[Vector]) -> list[Vector]:
    I = list(I)
    bad = iota_bar(system.graph, I)
    return [v for v in roots if system.is_orthogonal_to(v, I) and support(v) & bad]


def count_support_violations(window: DepthWindow, I: Iterable[int]) -> int:
    """Number of roots in the window orthogonal to Π_I whose support meets ῑ(I)."""
    imask = sum(1 << i for i in set(I))
    bad = sum(1 << s for s in iota_bar(window.system.graph, I))
    if not bad:
        return 0
    return sum(
        count for (supp, fixers), count in window.signatures().items()
        if fixers & imask == imask and supp & bad
    )


# rendering ---------------------------------------------------------------------------------


def _word(w: Element) -> str:
    return " ".join(f"r{s + 1}" for s in w.reduced_word()) or "1"


def render_report(rep: CentralizerReport) -> str:
    gpd = rep.groupoid
    name = {y: f"N{k + 1}" for k, y in enumerate(gpd.nodes)}
    out = [
        f"# centralizer of W_I, I = {format_set(rep.subset)}",
        f"hypothesis (A_>1-free): {'true' if rep.hypothesis else 'false'}",
        f"groupoid complete: {'true' if gpd.complete else 'false'}"
        + (f" (limit on {gpd.limit_hit})" if gpd.limit_hit else ""),
        "",
        "NODES",
    ]
    for y in gpd.nodes:
        roots = " ".join(f"{t + 1}:{format_vector(g)}" for t, g in gpd.reflections[y])
        moved = " ".join(format_vector(gpd.path[y].act(r)) for r in rep.perp_roots)
        out.append(
            f"{name[y]}\t{format_tuple(y)}\tset={format_set(y)}\t"
            f"reflections={roots or '-'}\tperp={moved or '-'}"
        )
    out += ["", "EDGES"]
    for e in gpd.edges:
        kind = "tree" if e.tree else "extra"
        out.append(f"{name[e.source]} -{e.t + 1}-> {name[e.target]}\t{kind}\t{_word(e.element)}")
    out += ["", f"PERP-ROOTS (complete: {'true' if rep.perp_complete else 'false'})"]
    out += [f"beta{k + 1}\t{format_vector(r)}" for k, r in enumerate(rep.perp_roots)]
    out += ["", "COXETER-MATRIX"]
    if rep.perp_roots:
        M = induced_coxeter_matrix(rep.system, rep.perp_roots)
        out += ["\t".join(label_str(m) for m in row) for row in M.labels]
    out += ["", "FINITE-PART"]
    index = {r: k for k, r in enumerate(rep.perp_roots)}
    for roots, ft in rep.finite.components:
        members = ",".join(f"beta{index[r] + 1}" for r in roots)
        out.append(f"{{{members}}}\t{ft.name if ft else 'infinite'}")
    out += ["", "Y-GENERATORS"]
    for k, gen in enumerate(rep.generators):
        e = gen.edge
        out.append(f"y{k + 1}\tvia {name[e.source]} -{e.t + 1}-> {name[e.target]}\t{_word(gen.element)}")
    out += ["", "VERDICTS"]
    for v in rep.verdicts:
        tag = "fixed" if v.fixed else f"moved to {format_vector(v.image)}"
        out.append(f"y{v.generator + 1}\tbeta{index[v.root] + 1}\t{tag}")
    out += ["", f"STATUS {rep.status}"]
    return "\n".join(out) + "\n"


def render_dot(gpd: Groupoid) -> str:
    name = {y: f"N{k + 1}" for k, y in enumerate(gpd.nodes)}
    lines = ["digraph groupoid {"]
    for y in gpd.nodes:
        lines.append(f'  {name[y]} [label="{format_tuple(y)}"];')
    for e in gpd.edges:
        style = "solid" if e.tree else "dashed"
        lines.append(f'  {name[e.source]} -> {name[e.target]} [label="{e.t + 1}", style={style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# the built-in counterexample walk --------------------------------------------------------

COUNTEREXAMPLE_BASE = (3, 4)
# generators applied along the closed walk starting and ending at (4,5) (0-based)
COUNTEREXAMPLE_WALK = (2, 0, 1, 3, 4, 5, 6, 3)


def walk_product(system: CoxeterSystem, start: Sequence[int], moves: Sequence[int]) -> tuple[Element, list[tuple[int, ...]]]:
    """Multiply the elementary elements along a walk; returns the product and the visited tuples."""
    x = tuple(start)
    w = system.identity
    visited = [x]
    for t in moves:
        e, x = elementary(system, x, t)
        w = e * w
        visited.append(x)
    return w, visited
