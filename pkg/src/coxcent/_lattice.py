"""Integer-coordinate root arithmetic used by the breadth-first root search.

Roots have coordinates in the ring generated by the numbers 2cos(pi/m) of
the graph.  Each coordinate is stored as integers over the few radical
slots of :mod:`coxcent.field` that the ring needs, scaled by 2 when a label
5 occurs (the golden ratio has denominator 2).  A vector is then a flat
tuple of ints, which hashes and compares much faster than field elements.
"""

from __future__ import annotations

from .errors import InvariantViolation
from .field import RADICAND, FieldElem


def _slot_closure(slots: set[int]) -> list[int]:
    out = {0} | slots
    while True:
        new = {a ^ b for a in out for b in out} - out
        if not new:
            return sorted(out)
        out |= new


class Lattice:
    """Encoder and reflection engine for one Coxeter system."""

    def __init__(self, n: int, nbr2: list[list[tuple[int, FieldElem]]]) -> None:
        coef = {(s, t): -b2 for s in range(n) for t, b2 in nbr2[s]}  # 2cos(pi/m), or 2
        used = set()
        for c in coef.values():
            used.update(c._nz)
        self.slots = _slot_closure(used)
        k = self.k = len(self.slots)
        pos = {slot: i for i, slot in enumerate(self.slots)}
        self.scale = 2 if any(c._d == 2 for c in coef.values()) else 1
        self.n = n
        # For each s: the terms (out, index, factor) of den * sum_t c_st X_t.
        self.rows: list[list[tuple[int, int, int]]] = []
        for s in range(n):
            acc: dict[tuple[int, int], int] = {}
            for t, _ in nbr2[s]:
                c = coef[(s, t)]
                f = self.scale // c._d
                for i in c._nz:
                    for j in self.slots:
                        key = (pos[i ^ j], t * k + pos[j])
                        acc[key] = acc.get(key, 0) + c._c[i] * f * RADICAND[i & j]
            self.rows.append([(a, idx, v) for (a, idx), v in sorted(acc.items()) if v])
        self._reflectors = [self._compile(s) for s in range(n)]
        self.simple = [self._unit(s) for s in range(n)]
        self._decoded: dict[tuple[int, ...], FieldElem] = {}

    def _unit(self, s: int) -> tuple[int, ...]:
        v = [0] * (self.n * self.k)
        v[s * self.k] = self.scale
        return tuple(v)

    def _compile(self, s: int):
        """Straight-line code for v -> s·v; the inner loop of every root search."""
        k, sc = self.k, self.scale
        base = s * k
        terms: list[list[str]] = [[] for _ in range(k)]
        for a, idx, f in self.rows[s]:
            terms[a].append(f"v[{idx}]" if f == 1 else f"{f} * v[{idx}]")
        lines = ["def reflect(v):"]
        for a in range(k):
            expr = " + ".join(terms[a]) or "0"
            if sc == 1:
                lines.append(f"    x{a} = {expr} - v[{base + a}]")
            else:
                lines.append(f"    q, r = divmod({expr}, {sc})")
                lines.append("    if r:")
                lines.append("        raise InvariantViolation('root coordinate left the coefficient ring')")
                lines.append(f"    x{a} = q - v[{base + a}]")
        same = " and ".join(f"x{a} == v[{base + a}]" for a in range(k))
        lines.append(f"    if {same}:")
        lines.append("        return v")
        new = ", ".join(f"x{a}" for a in range(k))
        lines.append(f"    return v[:{base}] + ({new},) + v[{base + k}:]")
        scope = {"InvariantViolation": InvariantViolation}
        exec("\n".join(lines), scope)
        return scope["reflect"]

    def _compile_signature(self, gens: tuple[int, ...]):
        """Straight-line code for v -> (support bitmask, bitmask of gens fixing v)."""
        k, sc = self.k, self.scale
        lines = ["def signature(v):", "    supp = 0", "    fix = 0"]
        for s in range(self.n):
            cond = " or ".join(f"v[{s * k + a}]" for a in range(k))
            lines.append(f"    if {cond}:")
            lines.append(f"        supp |= {1 << s}")
        for s in gens:
            terms: list[list[str]] = [[] for _ in range(k)]
            for a, idx, f in self.rows[s]:
                terms[a].append(f"v[{idx}]" if f == 1 else f"{f} * v[{idx}]")
            # s fixes v iff <α_s, v> = 0 iff sum_t c_st v_t = 2 v_s (in scaled integers)
            cond = " and ".join(
                f"{' + '.join(terms[a]) or '0'} == {2 * sc} * v[{s * k + a}]" for a in range(k)
            )
            lines.append(f"    if {cond}:")
            lines.append(f"        fix |= {1 << s}")
        lines.append("    return supp, fix")
        scope: dict = {}
        exec("\n".join(lines), scope)
        return scope["signature"]

    def signature_function(self, gens: tuple[int, ...]):
        cache = self.__dict__.setdefault("_signature_fns", {})
        fn = cache.get(gens)
        if fn is None:
            fn = cache[gens] = self._compile_signature(gens)
        return fn

    def reflect(self, s: int, v: tuple[int, ...]) -> tuple[int, ...]:
        """s·v, returning ``v`` itself when s fixes it."""
        return self._reflectors[s](v)

    def _reflect_slow(self, s: int, v: tuple[int, ...]) -> tuple[int, ...]:
        """Reference version of :meth:`reflect`."""
        k = self.k
        base = s * k
        new = [0] * k
        for a, idx, f in self.rows[s]:
            x = v[idx]
            if x:
                new[a] += f * x
        sc = self.scale
        changed = False
        for a in range(k):
            x = new[a]
            if sc != 1:
                x, r = divmod(x, sc)
                if r:
                    raise InvariantViolation("root coordinate left the coefficient ring")
            x -= v[base + a]
            new[a] = x
            if x != v[base + a]:
                changed = True
        if not changed:
            return v
        return v[:base] + tuple(new) + v[base + k:]

    def decode(self, v: tuple[int, ...]) -> tuple[FieldElem, ...]:
        k = self.k
        out = []
        cache = self._decoded
        for s in range(self.n):
            block = v[s * k:(s + 1) * k]
            x = cache.get(block)
            if x is None:
                c = [0] * 8
                for a, slot in enumerate(self.slots):
                    c[slot] = block[a]
                x = cache[block] = FieldElem._make(c, self.scale)
            out.append(x)
        return tuple(out)
