"""Geometric representation: roots, group elements as matrices, lengths, w0.

A root (or any vector of V) is a tuple of :class:`FieldElem` coordinates in
the basis of simple roots.  A group element stores its columns ``w·α_s``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from ._lattice import Lattice
from .errors import InvalidRoot, InvariantViolation, NonTerminating, NotFiniteType
from .field import ONE, ZERO_ELEM, FieldElem, cos_pi_over, linear_combination, render
from .graph import INF, CoxeterGraph, format_set, is_connected, is_finite_type

Vector = tuple  # tuple[FieldElem, ...]

DEFAULT_ROOT_CAP = 20000
_ASCENT_CAP = 100000


def gram(g: CoxeterGraph) -> list[list[FieldElem]]:
    """The bilinear form: 1 on the diagonal, -cos(pi/m) off it, -1 for m = inf."""
    n = g.n
    B = [[ZERO_ELEM] * n for _ in range(n)]
    for i in range(n):
        B[i][i] = ONE
        for j in range(n):
            if i != j:
                m = g.labels[i][j]
                B[i][j] = FieldElem(-1) if m == INF else -cos_pi_over(m)
    return B


def _first_sign(v: Vector) -> int:
    for c in v:
        if c._nz:
            return c.sign()
    return 0


class CoxeterSystem:
    """A Coxeter graph together with its cached geometric data."""

    def __init__(self, graph: CoxeterGraph) -> None:
        self.graph = graph
        self.n = n = graph.n
        self.B = gram(graph)
        # 2<α_s, α_t> for neighbours t != s
        self.nbr2: list[list[tuple[int, FieldElem]]] = [
            [(t, self.B[s][t] * 2) for t in range(n) if t != s and self.B[s][t]._nz]
            for s in range(n)
        ]
        self.nbr1: list[list[tuple[int, FieldElem]]] = [
            [(t, self.B[s][t]) for t in range(n) if t != s and self.B[s][t]._nz]
            for s in range(n)
        ]
        # s·v has s-coordinate -v_s - sum 2<α_s, α_t> v_t
        self._reflect_row = [[(s, -ONE)] + [(t, -b2) for t, b2 in self.nbr2[s]] for s in range(n)]
        self._pairing_row = [[(s, ONE)] + self.nbr1[s] for s in range(n)]
        zero = (ZERO_ELEM,) * n
        self.simple: tuple[Vector, ...] = tuple(
            zero[:s] + (ONE,) + zero[s + 1:] for s in range(n)
        )
        self.zero: Vector = zero
        self._w0: dict[frozenset[int], Element] = {}
        self._pos: dict[frozenset[int], list[Vector]] = {}
        self.identity = Element(self, self.simple, ())

    # vectors ---------------------------------------------------------------

    def reflect(self, s: int, v: Vector) -> Vector:
        """s·v; only the s-coordinate changes."""
        acc = linear_combination([(c, v[t]) for t, c in self._reflect_row[s]])
        if acc == v[s]:
            return v
        return v[:s] + (acc,) + v[s + 1:]

    def pairing(self, s: int, v: Vector) -> FieldElem:
        """<α_s, v>."""
        return linear_combination([(c, v[t]) for t, c in self._pairing_row[s]])

    def inner(self, u: Vector, v: Vector) -> FieldElem:
        acc = ZERO_ELEM
        for s in range(self.n):
            if u[s]._nz:
                acc = acc + u[s] * self.pairing(s, v)
        return acc

    def covector(self, v: Vector) -> tuple[FieldElem, ...]:
        """(<α_s, v>)_s, so that <u, v> is a plain dot product with u."""
        return tuple(self.pairing(s, v) for s in range(self.n))

    def is_orthogonal_to(self, v: Vector, subset: Iterable[int]) -> bool:
        return all(not self.pairing(s, v)._nz for s in subset)

    def reflection(self, gamma: Vector) -> Element:
        return reflection(self, gamma)

    # elements ----------------------------------------------------------------

    def simple_reflection(self, s: int) -> Element:
        return self.identity.mul_simple(s)

    def from_word(self, word: Iterable[int]) -> Element:
        w = self.identity
        for s in word:
            w = w.mul_simple(s)
        return w

    def w0(self, I: Iterable[int]) -> Element:
        """Longest element of W_I by repeated ascent."""
        key = frozenset(I)
        cached = self._w0.get(key)
        if cached is not None:
            return cached
        if not is_finite_type(self.graph, key):
            raise NotFiniteType(f"{format_set(key)} is not of finite type")
        w = self.identity
        order = sorted(key)
        steps = 0
        while True:
            for s in order:
                if _first_sign(w.cols[s]) > 0:
                    w = w.mul_simple(s)
                    break
            else:
                break
            steps += 1
            if steps > _ASCENT_CAP:
                raise NonTerminating(f"no longest element found for {format_set(key)}")
        self._w0[key] = w
        return w

    # roots ---------------------------------------------------------------------

    def positive_roots(self, J: Iterable[int] | None = None) -> list[Vector]:
        """Positive roots of the finite parabolic subsystem Φ_J, ordered by height."""
        key = frozenset(range(self.n)) if J is None else frozenset(J)
        if key not in self._pos:
            if not is_finite_type(self.graph, key):
                raise NotFiniteType(f"{format_set(key)} is not of finite type")
            win = self._bfs(sorted(key), None, DEFAULT_ROOT_CAP)
            if win.truncated:
                raise NonTerminating(f"more than {DEFAULT_ROOT_CAP} roots in {format_set(key)}")
            self._pos[key] = win.roots
        return list(self._pos[key])

    def roots_up_to_depth(self, bound: int, cap: int = DEFAULT_ROOT_CAP) -> DepthWindow:
        """All positive roots reachable from Π by at most ``bound`` simple reflections."""
        if bound < 0:
            raise ValueError("depth bound must be nonnegative")
        return self._bfs(list(range(self.n)), bound, cap)

    @property
    def lattice(self) -> Lattice:
        lat = self.__dict__.get("_lattice")
        if lat is None:
            lat = self.__dict__["_lattice"] = Lattice(self.n, self.nbr2)
        return lat

    def _bfs(self, gens: list[int], bound: int | None, cap: int) -> DepthWindow:
        """Breadth-first search over simple reflections, in integer coordinates."""
        lat = self.lattice
        simple = {lat.simple[s] for s in gens}
        reflectors = lat._reflectors
        layer = [lat.simple[s] for s in gens]
        seen = {v: 0 for v in layer}
        fixed: dict[tuple[int, ...], int] = {}
        levels = [layer]
        truncated = False
        d = 0
        while layer and (bound is None or d < bound) and not truncated:
            d += 1
            nxt = []
            for v in layer:
                mask = 0
                for s in gens:
                    if v in simple and v == lat.simple[s]:
                        continue
                    w = reflectors[s](v)
                    if w is v:
                        mask |= 1 << s
                        continue
                    if w in seen:
                        continue
                    if len(seen) >= cap:
                        truncated = True
                        break
                    seen[w] = d
                    nxt.append(w)
                if truncated:
                    break
                fixed[v] = mask
            layer = nxt
            levels.append(nxt)
        return DepthWindow(self, gens, levels, seen, fixed, bound, truncated)


class DepthWindow:
    """Positive roots reachable from Π by at most ``bound`` simple reflections.

    Complete up to ``bound`` unless ``truncated`` (the root cap was hit).
    Roots are kept in integer coordinates and converted on first access.
    A complete search (``bound is None``) lists each level in descending
    lexicographic order of the real coordinates; a depth window uses that
    order when coordinates are rational and a fixed integer order otherwise.
    """

    label = "depth-bounded window"

    def __init__(self, system: CoxeterSystem, gens: list[int], levels: list[list[tuple[int, ...]]],
                 depth: dict[tuple[int, ...], int], fixed: dict[tuple[int, ...], int],
                 bound: int | None, truncated: bool) -> None:
        self.system = system
        self.gens = list(gens)
        self.bound = bound
        self.truncated = truncated
        self._levels = levels
        self._depth = depth
        self._fixed = fixed
        self._roots: list[Vector] | None = None
        self._encoded: list[tuple[int, ...]] | None = None
        self._signatures: dict[tuple[int, int], int] | None = None

    def __len__(self) -> int:
        return len(self._depth)

    def _decode_all(self) -> None:
        lat = self.system.lattice
        roots: list[Vector] = []
        encoded: list[tuple[int, ...]] = []
        for level in self._levels:
            if lat.k == 1 or self.bound is not None:
                level = sorted(level, reverse=True)
                vecs = [lat.decode(v) for v in level]
            else:
                decoded = {lat.decode(v): v for v in level}
                vecs = sort_lex_desc(list(decoded))
                level = [decoded[x] for x in vecs]
            roots.extend(vecs)
            encoded.extend(level)
        self._roots, self._encoded = roots, encoded

    @property
    def roots(self) -> list[Vector]:
        if self._roots is None:
            self._decode_all()
        return self._roots  # type: ignore[return-value]

    @property
    def depth_of(self) -> dict[Vector, int]:
        self.roots
        return {x: self._depth[v] for x, v in zip(self._roots, self._encoded)}  # type: ignore[arg-type]

    def _fixed_mask(self, v: tuple[int, ...]) -> int:
        m = self._fixed.get(v)
        if m is None:
            # s·α_s = -α_s, so a reflection returns its argument only when it fixes it
            reflectors = self.system.lattice._reflectors
            m = 0
            for s in self.gens:
                if reflectors[s](v) is v:
                    m |= 1 << s
            self._fixed[v] = m
        return m

    @property
    def fixed_by(self) -> dict[Vector, int]:
        """Bitmask of the generators s with s·v = v (that is, ⟨α_s, v⟩ = 0)."""
        self.roots
        return {x: self._fixed_mask(v) for x, v in zip(self._roots, self._encoded)}  # type: ignore[arg-type]

    def signatures(self) -> dict[tuple[int, int], int]:
        """Counts of (support bitmask, fixer bitmask) over the window, computed in integers."""
        if self._signatures is not None:
            return self._signatures
        signature = self.system.lattice.signature_function(tuple(self.gens))
        out: dict[tuple[int, int], int] = {}
        for v in self._depth:
            key = signature(v)
            out[key] = out.get(key, 0) + 1
        self._signatures = out
        return out


class _Desc:
    """Sort key wrapper giving descending exact order on a coordinate.

    Well-separated values are ordered by their float approximations; close
    ones fall back to exact comparison.
    """

    __slots__ = ("x", "f", "e")

    def __init__(self, x: FieldElem) -> None:
        self.x = x
        self.f, self.e = x.approx()

    def __lt__(self, other: _Desc) -> bool:
        diff = self.f - other.f
        if abs(diff) > self.e + other.e:
            return diff > 0
        return self.x.compare(other.x) > 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _Desc):
            return NotImplemented
        if self.x is other.x:
            return True
        if abs(self.f - other.f) > self.e + other.e:
            return False
        return self.x == other.x


def _in_lex_desc_order(a: Vector, b: Vector) -> bool:
    """Exact ``a >= b`` in lexicographic order."""
    for x, y in zip(a, b):
        c = x.compare(y)
        if c:
            return c > 0
    return True


def sort_lex_desc(vectors: list[Vector]) -> list[Vector]:
    """Sort in descending lexicographic order of exact coordinates.

    Float keys give a candidate order; every adjacent pair is then confirmed
    exactly, falling back to a fully exact sort if any pair is out of order.
    """
    out = sorted(vectors, key=lambda v: tuple(-c.approx()[0] for c in v))
    if all(_in_lex_desc_order(out[i], out[i + 1]) for i in range(len(out) - 1)):
        return out
    return sorted(vectors, key=_lex_desc_key)


def _lex_desc_key(v: Vector) -> tuple:
    return tuple(_Desc(c) for c in v)


class Element:
    """A group element, stored as its matrix columns w·α_s."""

    __slots__ = ("system", "cols", "_word", "_hash")

    def __init__(self, system: CoxeterSystem, cols: Sequence[Vector], word: tuple[int, ...] | None = None) -> None:
        self.system = system
        self.cols = tuple(cols)
        self._word = word
        self._hash = None

    # algebra -------------------------------------------------------------------

    def mul_simple(self, s: int) -> Element:
        """w·s: columns t adjacent to s change to col_t - 2<α_s,α_t> col_s."""
        cols = list(self.cols)
        cs = cols[s]
        cols[s] = tuple(-c for c in cs)
        for t, b2 in self.system.nbr2[s]:
            ct = cols[t]
            cols[t] = tuple(a - b2 * b if b._nz else a for a, b in zip(ct, cs))
        word = None if self._word is None else self._word + (s,)
        return Element(self.system, cols, _maybe_reduced(self, word, s))

    def simple_mul(self, s: int) -> Element:
        """s·w."""
        r = self.system.reflect
        return Element(self.system, [r(s, c) for c in self.cols])

    def act(self, v: Vector) -> Vector:
        return act(self, v)

    def __mul__(self, other: Element) -> Element:
        if not isinstance(other, Element):
            return NotImplemented
        if other.is_identity():
            return self
        if self.is_identity():
            return other
        return Element(self.system, [act(self, c) for c in other.cols])

    def inverse(self) -> Element:
        return self.system.from_word(reversed(self.reduced_word()))

    def __pow__(self, k: int) -> Element:
        if k < 0:
            return self.inverse() ** (-k)
        out = self.system.identity
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_identity(self) -> bool:
        return self.cols == self.system.simple

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Element) and self.cols == other.cols

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.cols)
        return self._hash

    # length ------------------------------------------------------------------------

    def reduced_word(self) -> tuple[int, ...]:
        """Reduced word by greedy right descent (least generator first)."""
        if self._word is None:
            self._word = _descent_word(self)
        return self._word

    def length(self) -> int:
        return len(self.reduced_word())

    def inversion_set(self) -> list[Vector]:
        return inversion_set(self)

    def __repr__(self) -> str:
        word = " ".join(f"r{s + 1}" for s in self.reduced_word()) or "1"
        return f"Element({word})"


def _maybe_reduced(w: Element, word: tuple[int, ...] | None, s: int) -> tuple[int, ...] | None:
    # a reduced word for w extends to one for ws exactly when w·α_s > 0
    if word is None:
        return None
    return word if _first_sign(w.cols[s]) > 0 else None


def _descent_word(w: Element) -> tuple[int, ...]:
    letters = []
    n = w.system.n
    cap = _ASCENT_CAP
    while True:
        for s in range(n):
            if _first_sign(w.cols[s]) < 0:
                break
        else:
            if not w.is_identity():
                raise InvariantViolation("element without descent is not the identity")
            break
        w = Element(w.system, w.mul_simple(s).cols)
        letters.append(s)
        if len(letters) > cap:
            raise NonTerminating("descent did not terminate")
    return tuple(reversed(letters))


def act(w: Element, v: Vector) -> Vector:
    """Matrix-vector product w·v."""
    sysm = w.system
    out = None
    for s, c in enumerate(v):
        if not c._nz:
            continue
        col = w.cols[s]
        if out is None:
            out = [c * x if x._nz else ZERO_ELEM for x in col]
        else:
            for i, x in enumerate(col):
                if x._nz:
                    out[i] = out[i] + c * x
    return sysm.zero if out is None else tuple(out)


def reflection(system: CoxeterSystem, gamma: Vector) -> Element:
    """s_γ·v = v - 2<γ,v>γ; γ must be a unit vector."""
    if system.inner(gamma, gamma) != 1:
        raise InvalidRoot(f"{format_vector(gamma)} does not have unit norm")
    cols = []
    for s in range(system.n):
        k = system.pairing(s, gamma) * 2
        if not k._nz:
            cols.append(system.simple[s])
        else:
            cols.append(tuple(a - k * b for a, b in zip(system.simple[s], gamma)))
    return Element(system, cols)


def is_positive(v: Vector) -> bool:
    """True for a positive root; raises if the signs are mixed."""
    signs = {c.sign() for c in v if c._nz}
    if len(signs) > 1:
        raise InvariantViolation(f"vector {format_vector(v)} has mixed signs")
    return signs == {1}


def is_negative(v: Vector) -> bool:
    return _first_sign(v) < 0


def negate(v: Vector) -> Vector:
    return tuple(-c for c in v)


def support(v: Vector) -> frozenset[int]:
    return frozenset(i for i, c in enumerate(v) if c._nz)


def inversion_set(w: Element) -> list[Vector]:
    """Φ[w] from a reduced word: Φ[u s] = {α_s} ∪ s·Φ[u]."""
    sysm = w.system
    out: list[Vector] = []
    for s in w.reduced_word():
        out = [sysm.reflect(s, v) for v in out]
        out.append(sysm.simple[s])
    return out


def length(w: Element) -> int:
    return w.length()


def reduced_word(w: Element) -> tuple[int, ...]:
    return w.reduced_word()


def check_root(system: CoxeterSystem, v: Vector) -> list[str]:
    """Unit norm, sign trichotomy and connected support; returns the failures."""
    problems = []
    if system.inner(v, v) != 1:
        problems.append("norm")
    signs = {c.sign() for c in v if c._nz}
    if len(signs) != 1:
        problems.append("sign")
    supp = support(v)
    if supp and not is_connected(system.graph, supp):
        problems.append("support")
    return problems


# rendering --------------------------------------------------------------------------


def format_vector(v: Vector) -> str:
    return "[" + ",".join(render(c) for c in v) + "]"


def root_index(roots: Sequence[Vector]) -> dict[Vector, int]:
    return {r: i for i, r in enumerate(roots)}


def root_table(system: CoxeterSystem, J: Iterable[int] | None = None) -> list[dict]:
    """Rows ``index, height, coeffs, actions`` for the positive roots of a finite subsystem.

    ``actions[s]`` is the 1-based index of s·γ, ``None`` if s fixes γ and
    ``"---"`` if γ = α_s.
    """
    gens = sorted(range(system.n) if J is None else J)
    roots = system.positive_roots(gens)
    depth = system._bfs(gens, None, DEFAULT_ROOT_CAP).depth_of
    index = root_index(roots)
    rows = []
    for i, r in enumerate(roots):
        acts: dict[int, object] = {}
        for s in gens:
            if r == system.simple[s]:
                acts[s] = "---"
                continue
            v = system.reflect(s, r)
            acts[s] = None if v == r else index[v] + 1
        rows.append({"index": i + 1, "height": depth[r] + 1, "root": r, "actions": acts})
    return rows


def format_root_table(system: CoxeterSystem, J: Iterable[int] | None = None, fmt: str = "tsv") -> str:
    rows = root_table(system, J)
    gens = sorted(range(system.n) if J is None else J)
    if fmt == "tsv":
        head = ["index", "height", "coeffs"] + [f"r{s + 1}" for s in gens]
        lines = ["\t".join(head)]
        for row in rows:
            cells = [str(row["index"]), str(row["height"]), format_vector(row["root"])]
            for s in gens:
                a = row["actions"][s]
                cells.append("" if a is None else str(a))
            lines.append("\t".join(cells))
        return "\n".join(lines) + "\n"
    if fmt == "text":
        lines = []
        width = max(len(format_vector(r["root"])) for r in rows) if rows else 0
        for row in rows:
            acts = " ".join(
                f"{'.' if row['actions'][s] is None else row['actions'][s]:>4}" for s in gens
            )
            lines.append(
                f"{row['index']:>4}  h={row['height']:<3} {format_vector(row['root']):<{width}}  {acts}"
            )
        header = f"{'i':>4}  {'height':<5} {'root':<{width}}  " + " ".join(f"{'r' + str(s + 1):>4}" for s in gens)
        return header + "\n" + "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
