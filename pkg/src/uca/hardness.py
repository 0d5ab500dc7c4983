"""Pseudo-grid cycle weighing, the 3-partition reduction, and the model generator built on it."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import permutations, product

import numpy as np

from . import _kernels as _k
from .core import ExtremeSeq, PcaModel, realize, relabel
from .errors import GadgetUnavailable, MalformedInstance, SizeMismatch, TooLarge


@dataclass(frozen=True)
class PseudoGrid:
    """Vertices ``(q, r)`` for column ``q < 2k`` and row ``r < 4k``."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("the pseudo-grid needs k >= 1")

    @property
    def cols(self) -> int:
        return 2 * self.k

    @property
    def rows(self) -> int:
        return 4 * self.k

    def vertices(self):
        return [(q, r) for q in range(self.cols) for r in range(self.rows)]

    def edges(self):
        """``(tail, head, kind)`` triples with kind diagonal, vertical or horizontal."""
        out = []
        for q in range(self.cols):
            for r in range(self.rows):
                if r >= 1 and q + 1 < self.cols:
                    out.append(((q, r), (q + 1, r - 1), "diagonal"))
                if r >= 1:
                    out.append(((q, r - 1), (q, r), "vertical"))
        for r in range(self.rows):
            out.append(((self.cols - 1, r), (0, r), "horizontal"))
        return out


def build_grid(k: int) -> PseudoGrid:
    return PseudoGrid(k)


def check_tuples(x, k: int | None = None) -> tuple:
    x = tuple(tuple(int(v) for v in t) for t in x)
    if any(len(t) != 4 for t in x):
        raise MalformedInstance("tuples must have four entries")
    if any(v <= 0 for t in x for v in t):
        raise MalformedInstance("tuple entries must be positive")
    if k is not None and len(x) != k:
        raise SizeMismatch(f"expected {k} tuples, got {len(x)}")
    return x


def edge_weight(x, tail, head, kind) -> int:
    (q, r), _ = tail, head
    if kind == "horizontal":
        return 1
    x0, x1, y0, y1 = x[q // 2]
    xs, ys = (x0, x1), (y0, y1)
    p = r % 2
    if kind == "diagonal":
        return xs[p] if q % 2 == 0 else 1
    return (ys[p] if q % 2 == 0 else ys[1 - p]) + xs[p] + 1


def weigh(g: PseudoGrid, x) -> dict:
    x = check_tuples(x, g.k)
    return {(t, h): edge_weight(x, t, h, kind) for t, h, kind in g.edges()}


def apply_ops(x, chi=None, gamma=None, pi=None) -> tuple:
    """``pi(chi(gamma(x)))``: swap x-pairs where ``chi``, y-pairs where ``gamma``, tuple ``i`` to ``pi[i]``."""
    x = check_tuples(x)
    k = len(x)
    chi = chi or (0,) * k
    gamma = gamma or (0,) * k
    pi = pi or tuple(range(k))
    if not len(chi) == len(gamma) == len(pi) == k or sorted(pi) != list(range(k)):
        raise SizeMismatch("operation sizes do not match the tuple sequence")
    out = [None] * k
    for i, (x0, x1, y0, y1) in enumerate(x):
        if chi[i]:
            x0, x1 = x1, x0
        if gamma[i]:
            y0, y1 = y1, y0
        out[pi[i]] = (x0, x1, y0, y1)
    return tuple(out)


def max_cycle_weight(x) -> int:
    """Heaviest cycle weight; compiled sweep, checked against :func:`max_cycle_weight_reference`."""
    x = check_tuples(x)
    return int(_k.grid_max_cycle(np.array(x, dtype=np.int64).reshape(len(x), 4)))


def max_cycle_weight_reference(x) -> int:
    """Heaviest cycle weight: every cycle uses exactly one horizontal edge.

    ``lab[r, h]`` is the heaviest path from ``(0, r)`` to ``(q, h)``, swept column by column.
    """
    x = check_tuples(x)
    k = len(x)
    R = 4 * k
    NEG = -(1 << 60)
    lab = np.full((R, R), NEG, dtype=np.int64)
    np.fill_diagonal(lab, 0)
    for q in range(2 * k):
        for h in range(R - 1):
            w = edge_weight(x, (q, h), (q, h + 1), "vertical")
            np.maximum(lab[:, h + 1], lab[:, h] + w, out=lab[:, h + 1])
        if q + 1 == 2 * k:
            break
        nxt = np.full((R, R), NEG, dtype=np.int64)
        for h in range(1, R):
            nxt[:, h - 1] = lab[:, h] + edge_weight(x, (q, h), (q + 1, h - 1), "diagonal")
        nxt[nxt < NEG // 2] = NEG
        lab = nxt
    best = int(np.max(np.diag(lab)))
    return best + 1


def all_ops(k: int):
    ident = tuple(range(k))
    yield ident, (0,) * k, (0,) * k
    for pi in permutations(range(k)):
        for chi in product((0, 1), repeat=k):
            for gamma in product((0, 1), repeat=k):
                if pi == ident and not any(chi) and not any(gamma):
                    continue
                yield pi, chi, gamma


@dataclass(frozen=True)
class McwInstance:
    tuples: tuple
    ell: int

    @property
    def k(self) -> int:
        return len(self.tuples)

    def to_json(self) -> dict:
        return {"k": self.k, "tuples": [list(t) for t in self.tuples], "ell": self.ell}

    @classmethod
    def from_json(cls, doc) -> "McwInstance":
        try:
            tuples = check_tuples(doc["tuples"])
            if "k" in doc and doc["k"] != len(tuples):
                raise SizeMismatch("k does not match the number of tuples")
            return cls(tuples, int(doc["ell"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedInstance(f"bad MCW instance: {exc}") from exc


@dataclass(frozen=True)
class McwSolution:
    pi: tuple
    chi: tuple
    gamma: tuple
    weight: int

    def to_json(self) -> dict:
        return {"pi": list(self.pi), "chi": list(self.chi), "gamma": list(self.gamma), "weight": self.weight}


def _first_hit(job):
    x, ell, ops = job
    for pi, chi, gamma in ops:
        w = max_cycle_weight(apply_ops(x, chi, gamma, pi))
        if w <= ell:
            return McwSolution(pi, chi, gamma, w)
    return None


def solve_mcw(inst: McwInstance, limit: int | None = None, threads: int = 1):
    """Brute force over ``k! * 4^k`` operation triples; the first hit in enumeration order wins."""
    limit = int(os.environ.get("UCA_MAX_BRUTE", "6")) if limit is None else limit
    if inst.k > limit:
        raise TooLarge(f"k={inst.k} too large for brute force")
    ops = list(all_ops(inst.k))
    if threads <= 1:
        return _first_hit((inst.tuples, inst.ell, ops))
    size = max(1, len(ops) // (4 * threads))
    jobs = [(inst.tuples, inst.ell, ops[i : i + size]) for i in range(0, len(ops), size)]
    with ProcessPoolExecutor(threads) as pool:
        for hit in pool.map(_first_hit, jobs):
            if hit is not None:
                return hit
    return None


# ---------------------------------------------------------------------------
# 3-partition
# ---------------------------------------------------------------------------


def parse_3partition(text: str) -> list:
    try:
        return [int(v) for v in text.split()]
    except ValueError as exc:
        raise MalformedInstance(f"3-partition input must be integers: {exc}") from exc


def reduce_3partition(s) -> McwInstance:
    s = list(s)
    if not s or len(s) % 3:
        raise MalformedInstance("need 3n integers")
    n = len(s) // 3
    total = sum(s)
    if total % n:
        raise MalformedInstance("sum is not a multiple of n")
    T = total // n
    if any(not 1 <= v < T for v in s):
        raise MalformedInstance("every value must lie in [1, T)")
    l = [2 * (n * n + i) for i in range(n + 1)]
    h = [v + 2 for v in l]
    y_inf = h[n] ** 2
    tuples = []
    for i in range(n):
        tuples.append((l[i] * T, 1, y_inf - l[i] * T - 1, y_inf - 2))
        tuples += [(T, s[3 * i + j], 1, 1) for j in range(3)]
        tuples.append((1, h[i] * T, y_inf - h[i] * T - 1, y_inf - 2))
    ell = (10 * n - 1) * y_inf + sum(h[j] * T for j in range(n)) + n * (T + 6)
    return McwInstance(check_tuples(tuples), ell)


def three_partition_bruteforce(s) -> bool:
    s = sorted(s)
    n = len(s) // 3
    if n == 0 or sum(s) % n:
        return False
    T = sum(s) // n

    def go(rest):
        if not rest:
            return True
        a = rest[0]
        for i in range(1, len(rest)):
            for j in range(i + 1, len(rest)):
                if a + rest[i] + rest[j] == T:
                    if go([v for k, v in enumerate(rest) if k not in (0, i, j)]):
                        return True
        return False

    return go(s)


# ---------------------------------------------------------------------------
# model generator
# ---------------------------------------------------------------------------

# Six-arc gadget: aligned, universal-free, a single co-component, and equal
# (as a word) to both its 1-alignment and its reverse.  Arcs A1, A2, A4, A5
# receive the copies driven by y^0, x^1, y^1 and x^0 respectively.
GADGET = "s0 t5 s1 s2 t0 t1 s3 t2 s4 s5 t3 t4"

COPY_SLOTS = ((1, 2), (2, 1), (4, 3), (5, 0))  # (arc, tuple field)


def insert_copies(seq: ExtremeSeq, counts: dict) -> ExtremeSeq:
    """Add ``counts[a]`` twins of arc ``a``, each placed right after the original's extremes."""
    toks = []
    for kind, i in seq.tokens:
        toks.append((kind, (i, 0)))
        toks.extend((kind, (i, c + 1)) for c in range(counts.get(i, 0)))
    return relabel(toks)


def gadget_word() -> ExtremeSeq:
    if GADGET is None:
        raise GadgetUnavailable("gadget constant is not set")
    return ExtremeSeq.parse(GADGET)


def component_word(t) -> ExtremeSeq:
    t = check_tuples([t])[0]
    return insert_copies(gadget_word(), {a: t[f] - 1 for a, f in COPY_SLOTS})


def model_word(x, chi=None, gamma=None, pi=None) -> ExtremeSeq:
    """Word of the model for ``Y = pi(chi(gamma(x)))`` built from per-tuple components."""
    from .structure import align_word, join_all, reverse_aligned

    x = check_tuples(x)
    k = len(x)
    chi = chi or (0,) * k
    gamma = gamma or (0,) * k
    pi = pi or tuple(range(k))
    placed = [None] * k
    for q, t in enumerate(x):
        w = component_word(t)
        if chi[q]:
            w = align_word(reverse_aligned(w), 1)
        if gamma[q]:
            w = reverse_aligned(w)
        placed[pi[q]] = w
    return join_all(placed)


def model_from_mcw(x) -> PcaModel:
    return realize(model_word(x))


def tuples_json(inst: McwInstance) -> str:
    return json.dumps(inst.to_json())
