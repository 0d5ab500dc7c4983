"""Separation weights, walk statistics and the descriptor feasibility solver."""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

import networkx as nx

from .core import ExtremeSeq, PcaModel, UcaDescriptor, check_sequence, extreme_sequence, make_model
from .errors import InternalError, TooLarge
from .synthetic import HOLLOW, NOSE, STEP, SynEdge, SyntheticGraph, build_synthetic


def sep_edge(u: UcaDescriptor, e: SynEdge) -> Fraction:
    q = 1 if e.external else 0
    if e.kind == STEP:
        return u.d + u.ds - u.c * q
    if e.kind == NOSE:
        return u.d + u.ell - u.c * q
    return u.d - u.ell + u.c * q


@dataclass(frozen=True)
class Walk:
    edges: tuple

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        for a, b in zip(self.edges, self.edges[1:]):
            if a.dst != b.src:
                raise ValueError("walk edges are not consecutive")

    def __len__(self):
        return len(self.edges)

    def count(self, kind: str, external_only: bool = False) -> int:
        return sum(1 for e in self.edges if e.kind == kind and (e.external or not external_only))

    @property
    def jump(self) -> int:
        return self.count(NOSE) - self.count(HOLLOW)

    @property
    def ext(self) -> int:
        return self.count(HOLLOW, True) - self.count(NOSE, True) - self.count(STEP, True)

    @property
    def sigma(self) -> int:
        return self.count(STEP)

    @property
    def is_closed(self) -> bool:
        return bool(self.edges) and self.edges[0].src == self.edges[-1].dst

    def vertices(self) -> list:
        return [e.src for e in self.edges]

    def stats(self) -> tuple:
        """``(Jump, Ext, |W|, sigma)``; enough to evaluate the weight under any descriptor."""
        return (self.jump, self.ext, len(self.edges), self.sigma)


def sep_closed_form(u: UcaDescriptor, stats: tuple) -> Fraction:
    jump, ext, size, sigma = stats
    return u.ell * jump + u.c * ext + u.d * size + u.ds * sigma


def sep_walk(u: UcaDescriptor, w: Walk) -> Fraction:
    total = sum((sep_edge(u, e) for e in w.edges), Fraction(0))
    closed = sep_closed_form(u, w.stats())
    if total != closed:
        raise InternalError(f"edge sum {total} differs from closed form {closed}")
    return total


@dataclass(frozen=True)
class CycleWitness:
    cycle: Walk
    sep: Fraction
    ext: int

    def to_json(self) -> dict:
        return {"edges": [e.to_json() for e in self.cycle.edges], "sep": str(self.sep), "ext": self.ext}


# ---------------------------------------------------------------------------
# feasibility
# ---------------------------------------------------------------------------


def _scaled_weights(s: SyntheticGraph, u: UcaDescriptor):
    scale = math.lcm(*(q.denominator for q in (u.c, u.ell, u.d, u.ds)))
    return scale, [int(sep_edge(u, e) * scale) for e in s.edges]


def longest_potentials(s: SyntheticGraph, u: UcaDescriptor):
    """Longest-path potentials from ``A0``; returns ``(potentials, None)`` or ``(None, witness)``."""
    n = s.n
    scale, w = _scaled_weights(s, u)
    NEG = None
    pot = [NEG] * n
    pred = [None] * n
    pot[0] = 0
    edges = list(enumerate(s.edges))
    last = None
    for _ in range(n):
        last = None
        for k, e in edges:
            if pot[e.src] is None:
                continue
            cand = pot[e.src] + w[k]
            if pot[e.dst] is None or cand > pot[e.dst]:
                pot[e.dst] = cand
                pred[e.dst] = k
                last = e.dst
        if last is None:
            break
    if last is None:
        return [Fraction(p, scale) for p in pot], None
    v = last
    for _ in range(n):
        v = s.edges[pred[v]].src
    cyc = []
    x = v
    while True:
        k = pred[x]
        cyc.append(s.edges[k])
        x = s.edges[k].src
        if x == v:
            break
    walk = Walk(tuple(reversed(cyc)))
    sep = sep_walk(u, walk)
    if sep <= 0:
        raise InternalError("predecessor cycle is not positive")
    return None, CycleWitness(walk, sep, walk.ext)


def uca_problems(m: PcaModel, u: UcaDescriptor, seq: ExtremeSeq | None = None) -> list:
    """Every way in which ``m`` fails to be a u-CA model (equivalent to ``seq`` if given)."""
    problems = []
    c = m.circumference
    if c != u.c:
        problems.append(f"circumference {c} != {u.c}")
    for i, a in enumerate(m.arcs):
        if (a.t - a.s) % c != u.ell:
            problems.append(f"arc {i} has length {(a.t - a.s) % c}")
    ext = sorted([a.s for a in m.arcs] + [a.t for a in m.arcs])
    for k in range(len(ext)):
        gap = (ext[(k + 1) % len(ext)] - ext[k]) % c or (c if len(ext) == 1 else 0)
        if gap < u.d:
            problems.append(f"extremes at {ext[k]} and {ext[(k + 1) % len(ext)]} closer than d")
    starts = sorted(a.s for a in m.arcs)
    for k in range(len(starts)):
        gap = (starts[(k + 1) % len(starts)] - starts[k]) % c or c
        if gap < u.d + u.ds:
            problems.append(f"starts at {starts[k]} closer than d + d_s")
    if seq is not None and extreme_sequence(m) != seq:
        problems.append("extreme word differs from the input")
    return problems


def feasibility(seq: ExtremeSeq, u: UcaDescriptor):
    """Return a u-CA model equivalent to ``seq`` or a positive :class:`CycleWitness`.

    Starts come from longest-path potentials with ``s(A0) = 0``; the result is
    then shifted so that the first extreme of ``seq`` lands on the point 0.
    """
    check_sequence(seq)
    s = build_synthetic(seq)
    pot, witness = longest_potentials(s, u)
    if witness is not None:
        return witness
    c = u.c
    pairs = [(x, (x + u.ell) % c) for x in pot]
    kind, j = seq.tokens[0]
    p = pairs[j][1] if kind == "t" else Fraction(0)
    pairs = [((a - p) % c, (b - p) % c) for a, b in pairs]
    try:
        model = make_model(c, pairs)
    except Exception as exc:
        raise InternalError(f"potentials do not form a PCA model: {exc}") from exc
    problems = uca_problems(model, u, seq)
    if problems:
        raise InternalError("; ".join(problems))
    return model


# ---------------------------------------------------------------------------
# cycle enumeration oracle
# ---------------------------------------------------------------------------


def max_brute() -> int:
    return int(os.environ.get("UCA_MAX_BRUTE", "8"))


def enumerate_cycles(s: SyntheticGraph, max_len: int | None = None, limit: int | None = None) -> list:
    """Every simple cycle of ``s`` (parallel edges give distinct cycles)."""
    limit = max_brute() if limit is None else limit
    if s.n > limit:
        raise TooLarge(f"cycle enumeration refused for n={s.n} > {limit}")
    g = nx.DiGraph()
    g.add_nodes_from(range(s.n))
    parallel = {}
    for e in s.edges:
        g.add_edge(e.src, e.dst)
        parallel.setdefault((e.src, e.dst), []).append(e)
    out = []
    for nodes in nx.simple_cycles(g, length_bound=max_len):
        hops = [(nodes[k], nodes[(k + 1) % len(nodes)]) for k in range(len(nodes))]
        for choice in product(*(parallel[h] for h in hops)):
            out.append(Walk(choice))
    return out


def feasible_by_cycles(cycles, u: UcaDescriptor) -> bool:
    return all(sep_walk(u, w) <= 0 for w in cycles)


def witness_json(w: CycleWitness) -> str:
    return json.dumps(w.to_json())
