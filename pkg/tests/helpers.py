"""Shared fixtures for the test suite: table loading and random graphs."""

from __future__ import annotations

import csv
import random
from pathlib import Path

from coxcent.field import FieldElem
from coxcent.graph import INF, CoxeterGraph, components, is_A_gt1_free

DATA = Path(__file__).parent / "data"

# golden ratio 2cos(pi/5), written "c" in the H4 table
GOLDEN = (1 + FieldElem.sqrt(5)) / 2
ROOT2 = FieldElem.sqrt(2)


def parse_coefficient(text: str) -> FieldElem:
    """Table notation: sums of terms like ``3``, ``4c``, ``c``, ``2r2``, ``r2``."""
    total = FieldElem(0)
    for term in text.strip().split("+"):
        for symbol, value in (("c", GOLDEN), ("r2", ROOT2)):
            if term.endswith(symbol):
                k = term[: -len(symbol)]
                total = total + value * (int(k) if k else 1)
                break
        else:
            total = total + int(term)
    return total


def load_table(name: str) -> list[dict]:
    """Rows with ``index``, ``height``, ``root`` (field vector) and ``actions`` (raw cells)."""
    with open(DATA / name, encoding="utf-8", newline="") as fh:
        rows = list(csv.DictReader(fh, delimiter="\t"))
    gens = [k for k in rows[0] if k.startswith("r")]
    return [
        {
            "index": int(r["index"]),
            "height": int(r["height"]),
            "root": tuple(parse_coefficient(x) for x in r["coeffs"].split(",")),
            "actions": [r[g] for g in gens],
        }
        for r in rows
    ]


def random_graph(
    rng: random.Random,
    max_n: int = 7,
    labels: tuple = (2, 2, 2, 3, 3, 4, INF),
    max_inf: int = 2,
    min_n: int = 2,
) -> CoxeterGraph:
    """Random Coxeter graph; label 2 is weighted so graphs are not all complete."""
    n = rng.randint(min_n, max_n)
    edges = {}
    infs = 0
    for i in range(n):
        for j in range(i + 1, n):
            m = rng.choice(labels)
            if m == INF:
                if infs >= max_inf:
                    m = 2
                else:
                    infs += 1
            if m != 2:
                edges[(i, j)] = m
    return CoxeterGraph.from_edges(n, edges)


def random_subset(rng: random.Random, g: CoxeterGraph, max_size: int = 3) -> frozenset[int]:
    return frozenset(rng.sample(range(g.n), rng.randint(0, min(max_size, g.n))))


def random_A_gt1_free_subset(rng: random.Random, g: CoxeterGraph, max_size: int = 3) -> frozenset[int]:
    """Random subset with no component of type A_n, 2 <= n < inf; shrinks on failure."""
    I = set(random_subset(rng, g, max_size))
    while not is_A_gt1_free(g, I):
        bad = next(c for c in components(g, I) if not is_A_gt1_free(g, c))
        I.discard(rng.choice(sorted(bad)))
    return frozenset(I)


def random_word(rng: random.Random, n: int, max_len: int = 12) -> list[int]:
    return [rng.randrange(n) for _ in range(rng.randint(0, max_len))]


ACCEPTANCE_LOG: list[str] = []


def report(criterion: int, ok: bool, detail: str, seconds: float) -> None:
    """Record and print one pass/fail line for an acceptance criterion."""
    line = f"criterion {criterion}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {detail}"
    ACCEPTANCE_LOG.append(line)
    print(line)
