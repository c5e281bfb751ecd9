"""Coxeter graphs: parsing, subsets, components and finite-type classification.

Generators are numbered ``0..n-1`` internally.  The text format and the
command line use 1-based numbering; conversion happens at those borders.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import inf
from typing import Iterable, Sequence

from .errors import GraphFormatError, NotFiniteType, PreconditionError, UnsupportedLabel

INF = inf
SUPPORTED_LABELS = (2, 3, 4, 5, 6, INF)

GeneratorSet = frozenset  # frozenset[int]


def _check_label(m: object) -> float | int:
    if m == INF:
        return INF
    if isinstance(m, int) and 2 <= m <= 6:
        return m
    raise UnsupportedLabel(m)


def label_str(m: float | int) -> str:
    return "inf" if m == INF else str(m)


@dataclass(frozen=True)
class CoxeterGraph:
    """Symmetric Coxeter matrix on ``n`` generators."""

    n: int
    labels: tuple[tuple[float | int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.labels) != self.n or any(len(row) != self.n for row in self.labels):
            raise GraphFormatError("label matrix must be n x n")
        for i in range(self.n):
            if self.labels[i][i] != 1:
                raise GraphFormatError(f"m({i + 1},{i + 1}) must be 1")
            for j in range(i + 1, self.n):
                m = self.labels[i][j]
                if m != self.labels[j][i]:
                    raise GraphFormatError(f"labels of ({i + 1},{j + 1}) are not symmetric")
                _check_label(m)

    @classmethod
    def from_edges(cls, n: int, edges: dict[tuple[int, int], float | int] | Iterable) -> CoxeterGraph:
        """Build from 0-based edges ``{(i, j): m}`` (or an iterable of ``(i, j, m)``)."""
        items = edges.items() if isinstance(edges, dict) else (((i, j), m) for i, j, m in edges)
        rows = [[1 if i == j else 2 for j in range(n)] for i in range(n)]
        for (i, j), m in items:
            if not (0 <= i < n and 0 <= j < n) or i == j:
                raise GraphFormatError(f"bad edge ({i}, {j}) for {n} nodes")
            rows[i][j] = rows[j][i] = _check_label(m)
        return cls(n, tuple(tuple(r) for r in rows))

    def m(self, i: int, j: int) -> float | int:
        return self.labels[i][j]

    def neighbors(self, i: int) -> list[int]:
        return [j for j in range(self.n) if j != i and self.labels[i][j] != 2]

    def edges(self) -> list[tuple[int, int, float | int]]:
        return [
            (i, j, self.labels[i][j])
            for i, j in combinations(range(self.n), 2)
            if self.labels[i][j] != 2
        ]

    def induced(self, subset: Sequence[int]) -> CoxeterGraph:
        """Subgraph on ``subset`` with nodes renumbered in the given order."""
        return CoxeterGraph(
            len(subset), tuple(tuple(self.labels[a][b] for b in subset) for a in subset)
        )

    def to_text(self) -> str:
        lines = [f"nodes {self.n}"]
        lines += [f"edge {i + 1} {j + 1} {label_str(m)}" for i, j, m in self.edges()]
        return "\n".join(lines) + "\n"


# parsing -----------------------------------------------------------------------


def parse_graph(text: str) -> CoxeterGraph:
    """Parse the line format ``nodes <n>`` / ``edge <i> <j> <m>`` (1-based, ``#`` comments)."""
    n: int | None = None
    edges: dict[tuple[int, int], float | int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        where = f"line {lineno}: {raw.strip()!r}"
        if words[0] == "nodes":
            if n is not None:
                raise GraphFormatError(f"{where}: repeated 'nodes' declaration")
            if len(words) != 2 or not words[1].isdigit() or int(words[1]) < 1:
                raise GraphFormatError(f"{where}: expected 'nodes <positive integer>'")
            n = int(words[1])
        elif words[0] == "edge":
            if n is None:
                raise GraphFormatError(f"{where}: 'edge' before 'nodes'")
            if len(words) != 4 or not (words[1].isdigit() and words[2].isdigit()):
                raise GraphFormatError(f"{where}: expected 'edge <i> <j> <m>'")
            i, j = int(words[1]), int(words[2])
            if not (1 <= i <= n and 1 <= j <= n):
                raise GraphFormatError(f"{where}: node index out of range 1..{n}")
            if i == j:
                raise GraphFormatError(f"{where}: loop edge")
            m = _parse_label(words[3], where)
            key = (min(i, j) - 1, max(i, j) - 1)
            if key in edges and edges[key] != m:
                raise GraphFormatError(f"{where}: conflicting label for edge {i}-{j}")
            edges[key] = m
        else:
            raise GraphFormatError(f"{where}: unknown directive {words[0]!r}")
    if n is None:
        raise GraphFormatError("missing 'nodes' declaration")
    return CoxeterGraph.from_edges(n, edges)


def _parse_label(word: str, where: str) -> float | int:
    if word.lower() in ("inf", "infinity", "∞"):
        return INF
    if not re.fullmatch(r"\d+", word):
        raise GraphFormatError(f"{where}: bad label {word!r}")
    m = int(word)
    if m < 2:
        raise GraphFormatError(f"{where}: label must be at least 2")
    return _check_label(m)


def parse_subset(text: str, n: int | None = None) -> frozenset[int]:
    """Comma-separated 1-based indices -> 0-based frozenset."""
    text = text.strip()
    if not text:
        return frozenset()
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part.isdigit():
            raise GraphFormatError(f"bad generator index {part!r}")
        k = int(part)
        if k < 1 or (n is not None and k > n):
            raise GraphFormatError(f"generator index {k} out of range")
        out.append(k - 1)
    return frozenset(out)


def parse_tuple(text: str, n: int | None = None) -> tuple[int, ...]:
    """Comma-separated 1-based indices -> 0-based tuple (order kept, no repeats)."""
    text = text.strip()
    items = [] if not text else [p.strip() for p in text.split(",")]
    out = []
    for part in items:
        if not part.isdigit() or int(part) < 1 or (n is not None and int(part) > n):
            raise GraphFormatError(f"bad generator index {part!r}")
        out.append(int(part) - 1)
    if len(set(out)) != len(out):
        raise GraphFormatError(f"repeated generator in tuple {text!r}")
    return tuple(out)


def format_set(J: Iterable[int]) -> str:
    return "{" + ",".join(str(j + 1) for j in sorted(J)) + "}"


def format_tuple(x: Sequence[int]) -> str:
    return "(" + ",".join(str(j + 1) for j in x) + ")"


# standard graphs of the finite irreducible families -----------------------------

_TYPE_RE = re.compile(r"^\s*([A-Ia-i])\s*(\d+)\s*(?:\(\s*(\d+)\s*\))?\s*$")


def standard_edges(family: str, rank: int, m: int | None = None) -> dict[tuple[int, int], int]:
    """0-based edges of the standard labelling r_1..r_rank of a finite family."""
    path = {(i, i + 1): 3 for i in range(rank - 1)}
    if family == "A" and rank >= 1:
        return path
    if family == "B" and rank >= 2:
        path[(rank - 2, rank - 1)] = 4
        return path
    if family == "D" and rank >= 4:
        e = {(i, i + 1): 3 for i in range(rank - 2)}
        e[(rank - 3, rank - 1)] = 3
        return e
    if family == "E" and rank in (6, 7, 8):
        e = {(0, 2): 3, (1, 3): 3}
        e.update({(i, i + 1): 3 for i in range(2, rank - 1)})
        return e
    if family == "F" and rank == 4:
        return {(0, 1): 3, (1, 2): 4, (2, 3): 3}
    if family == "H" and rank in (3, 4):
        path[(0, 1)] = 5
        return path
    if family == "I" and rank == 2 and m is not None:
        return {(0, 1): m}
    raise ValueError(f"no finite Coxeter type {family}{rank}")


def graph_from_type(name: str) -> CoxeterGraph:
    """Graph for a name such as ``"E8"``, ``"D7"``, ``"I2(5)"`` in standard labelling."""
    mt = _TYPE_RE.match(name)
    if not mt:
        raise ValueError(f"cannot parse Coxeter type {name!r}")
    family, rank = mt.group(1).upper(), int(mt.group(2))
    m = int(mt.group(3)) if mt.group(3) else None
    if family == "G" and rank == 2:
        family, m = "I", 6
    if family == "I" and m is None:
        raise ValueError("type I2 needs a label, e.g. I2(5)")
    if m is not None and family != "I":
        raise ValueError(f"label only allowed for I2, got {name!r}")
    return CoxeterGraph.from_edges(rank, standard_edges(family, rank, m))


# subsets ------------------------------------------------------------------------


def components(g: CoxeterGraph, J: Iterable[int]) -> list[frozenset[int]]:
    """Connected components of the induced subgraph on J, ordered by least element."""
    rest = set(J)
    out = []
    while rest:
        start = min(rest)
        comp = {start}
        stack = [start]
        rest.discard(start)
        while stack:
            a = stack.pop()
            for b in list(rest):
                if g.labels[a][b] != 2:
                    rest.discard(b)
                    comp.add(b)
                    stack.append(b)
        out.append(frozenset(comp))
    return out


def is_connected(g: CoxeterGraph, J: Iterable[int]) -> bool:
    return len(components(g, J)) == 1


def is_adjacent(g: CoxeterGraph, I: Iterable[int], J: Iterable[int]) -> bool:
    J = list(J)
    return any(g.labels[i][j] != 2 for i in I for j in J if i != j)


def is_apart(g: CoxeterGraph, I: Iterable[int], J: Iterable[int]) -> bool:
    I, J = set(I), set(J)
    return not (I & J) and not is_adjacent(g, I, J)


def tilde_closure(g: CoxeterGraph, J: Iterable[int], K: Iterable[int]) -> frozenset[int]:
    """Elements of J ∪ K lying in a component of Γ_{J∪K} that meets K."""
    K = frozenset(K)
    if not K:
        return frozenset()
    union = frozenset(J) | K
    return frozenset().union(*(c for c in components(g, union) if c & K))


# classification -------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteType:
    """A finite irreducible type and its standard labelling.

    ``labelling[i]`` is the generator playing the role of ``r_{i+1}``.
    """

    family: str
    rank: int
    m: int | None
    labelling: tuple[int, ...]

    @property
    def name(self) -> str:
        if self.family == "I":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name


def _candidates(rank: int, label_set: set) -> list[tuple[str, int | None]]:
    if rank == 1:
        return [("A", None)]
    if rank == 2:
        (m,) = label_set
        return [("A", None)] if m == 3 else [("I", m)]
    out: list[tuple[str, int | None]] = [("A", None), ("B", None)]
    if rank >= 4:
        out.append(("D", None))
    if rank in (6, 7, 8):
        out.append(("E", None))
    if rank == 4:
        out.append(("F", None))
    if rank in (3, 4):
        out.append(("H", None))
    return out


@lru_cache(maxsize=4096)
def _classify_matrix(labels: tuple[tuple[float | int, ...], ...]) -> tuple[str, int, int | None, tuple[int, ...]] | None:
    """Classify a connected Coxeter matrix; returns the lexicographically least labelling."""
    k = len(labels)
    edge_labels = {labels[i][j] for i in range(k) for j in range(i + 1, k) if labels[i][j] != 2}
    if INF in edge_labels or len(edge_labels) > 2 or k - 1 != sum(
        1 for i in range(k) for j in range(i + 1, k) if labels[i][j] != 2
    ):
        # finite irreducible graphs are trees with at most two distinct labels
        return None
    for family, m in _candidates(k, edge_labels):
        std = [[1 if i == j else 2 for j in range(k)] for i in range(k)]
        for (i, j), lab in standard_edges(family, k, m).items():
            std[i][j] = std[j][i] = lab
        phi = _first_isomorphism(std, labels)
        if phi is not None:
            return family, k, m, phi
    return None


def _first_isomorphism(std: list[list], labels: tuple[tuple, ...]) -> tuple[int, ...] | None:
    k = len(std)
    chosen: list[int] = []
    used = [False] * k

    def extend(pos: int) -> bool:
        if pos == k:
            return True
        for v in range(k):
            if used[v]:
                continue
            if all(labels[chosen[q]][v] == std[q][pos] for q in range(pos)):
                used[v] = True
                chosen.append(v)
                if extend(pos + 1):
                    return True
                chosen.pop()
                used[v] = False
        return False

    return tuple(chosen) if extend(0) else None


def classify(g: CoxeterGraph, J: Iterable[int]) -> FiniteType | None:
    """Finite type of a connected subset J (with standard labelling), or ``None``."""
    nodes = sorted(set(J))
    if not nodes or not is_connected(g, nodes):
        raise PreconditionError(f"classify needs a nonempty connected subset, got {format_set(nodes)}")
    res = _classify_matrix(g.induced(nodes).labels)
    if res is None:
        return None
    family, rank, m, phi = res
    return FiniteType(family, rank, m, tuple(nodes[p] for p in phi))


def classify_components(g: CoxeterGraph, J: Iterable[int]) -> list[tuple[frozenset[int], FiniteType | None]]:
    return [(c, classify(g, c)) for c in components(g, J)]


def is_finite_type(g: CoxeterGraph, J: Iterable[int]) -> bool:
    return all(ft is not None for _, ft in classify_components(g, J))


def minus_one_type(ft: FiniteType) -> bool:
    """Whether the longest element of this irreducible type is central (acts as -1)."""
    if ft.family == "A":
        return ft.rank == 1
    if ft.family == "D":
        return ft.rank % 2 == 0
    if ft.family == "E":
        return ft.rank != 6
    if ft.family == "I":
        return ft.m % 2 == 0
    return True


def is_minus_one_type(g: CoxeterGraph, J: Iterable[int]) -> bool:
    ft = classify(g, J)
    if ft is None:
        raise NotFiniteType(f"{format_set(J)} is not of finite type")
    return minus_one_type(ft)


def is_A_gt1_free(g: CoxeterGraph, I: Iterable[int]) -> bool:
    """True iff no component of I is of type A_n with n >= 2."""
    for _, ft in classify_components(g, I):
        if ft is not None and ft.family == "A" and ft.rank >= 2:
            return False
    return True


def iota(g: CoxeterGraph, J: Iterable[int]) -> frozenset[int]:
    """Union of the components of J that are not of finite type."""
    return frozenset().union(*(c for c, ft in classify_components(g, J) if ft is None))


def iota_bar(g: CoxeterGraph, J: Iterable[int]) -> frozenset[int]:
    """Generators not apart from iota(J)."""
    core = iota(g, J)
    return frozenset(s for s in range(g.n) if s in core or is_adjacent(g, {s}, core))


# named fixtures ---------------------------------------------------------------------


def counterexample_graph() -> CoxeterGraph:
    """Seven generators where the A_2 subset {4,5} breaks the fixed-point property."""
    edges = {(0, 2): 3, (1, 2): 3, (2, 3): 3, (3, 4): 3, (4, 5): 3, (4, 6): 3, (2, 5): INF, (2, 6): INF}
    return CoxeterGraph.from_edges(7, edges)


def support_example_graph() -> CoxeterGraph:
    """Eight generators, all edges of label 3; used for the iota / iota-bar example."""
    pairs = [(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (1, 5), (1, 6), (4, 7), (4, 8)]
    return CoxeterGraph.from_edges(8, {(a - 1, b - 1): 3 for a, b in pairs})
