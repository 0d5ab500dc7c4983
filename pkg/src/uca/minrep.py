"""UCA recognition and minimal (c, ell) representations of PCA words."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import ExtremeSeq, PcaModel, UcaDescriptor, as_rational, check_sequence, greedy_rows
from .errors import InternalError, NotUca, TooLarge
from .separation import Walk, enumerate_cycles, feasibility, max_brute
from .synthetic import KINDS, NOSE, STEP, SynEdge, SyntheticGraph, build_synthetic, edge_class, unroll_word


@dataclass(frozen=True)
class GreedyCycle:
    kind: str
    vertices: tuple
    tail: tuple
    edges: tuple = ()

    @property
    def noses(self) -> int:
        return sum(1 for e in self.edges if e.kind == NOSE)

    def to_json(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "tail": list(self.tail)}


def greedy_cycle(s: SyntheticGraph, kind: str, start: int) -> GreedyCycle:
    """Follow the ``kind`` edge when present, else the step, until a vertex repeats."""
    order, edges, seen = [], [], {}
    v = start
    while v not in seen:
        seen[v] = len(order)
        order.append(v)
        e = s.out(v, kind) or s.out(v, STEP)
        edges.append(e)
        v = e.dst
    k = seen[v]
    return GreedyCycle(kind, tuple(order[k:]), tuple(order[:k]), tuple(edges[k:]))


@dataclass(frozen=True)
class Recognition:
    is_uca: bool
    nose_cycle: GreedyCycle
    hollow_cycle: GreedyCycle

    def to_json(self) -> dict:
        out = {"uca": self.is_uca}
        if not self.is_uca:
            out["witness"] = [self.nose_cycle.to_json(), self.hollow_cycle.to_json()]
        return out


def recognize_uca(seq: ExtremeSeq) -> Recognition:
    check_sequence(seq)
    s = build_synthetic(seq)
    nc = greedy_cycle(s, "nose", 0)
    hc = greedy_cycle(s, "hollow", 0)
    return Recognition(bool(set(nc.vertices) & set(hc.vertices)), nc, hc)


def _require_uca(seq: ExtremeSeq) -> None:
    rec = recognize_uca(seq)
    if not rec.is_uca:
        raise NotUca("greedy nose and hollow cycles are disjoint", (rec.nose_cycle, rec.hollow_cycle))


def _grid(d: Fraction, ds: Fraction):
    b = math.lcm(d.denominator, ds.denominator)
    return b, int(d * b), int(ds * b)


# ---------------------------------------------------------------------------
# minimal length
# ---------------------------------------------------------------------------


@dataclass
class _Unrolled:
    graph: SyntheticGraph
    fwd: list  # forward edges
    back: list  # backward edges
    order: list  # topological order of the forward DAG


def _unrolled(seq: ExtremeSeq, kappa: int) -> _Unrolled:
    word = unroll_word(seq, kappa)
    g = build_synthetic(word)
    row = greedy_rows(word)
    fwd, back = [], []
    for e in g.edges:
        cls = edge_class(e, row).direction
        if cls == "forward":
            fwd.append(e)
        elif cls == "backward":
            back.append(e)
    indeg = [0] * g.n
    succ = [[] for _ in range(g.n)]
    for e in fwd:
        indeg[e.dst] += 1
        succ[e.src].append(e.dst)
    stack = [v for v in range(g.n) if indeg[v] == 0]
    order = []
    while stack:
        v = stack.pop()
        order.append(v)
        for w in succ[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                stack.append(w)
    if len(order) != g.n:
        raise InternalError("forward subgraph of an unrolling is cyclic")
    return _Unrolled(g, fwd, back, order)


def _path_dp(u: _Unrolled, src: int, w, reverse: bool = False):
    """Single-source (or single-target) longest forward paths with predecessor edges."""
    n = u.graph.n
    lab = [None] * n
    pred = [None] * n
    lab[src] = 0
    adj = [[] for _ in range(n)]
    for e in u.fwd:
        adj[e.dst if reverse else e.src].append(e)
    for v in reversed(u.order) if reverse else u.order:
        if lab[v] is None:
            continue
        for e in adj[v]:
            x = e.src if reverse else e.dst
            cand = lab[v] + w(e)
            if lab[x] is None or cand > lab[x]:
                lab[x] = cand
                pred[x] = e
    return lab, pred


def _trace(pred, start, stop, reverse=False):
    edges = []
    v = start
    while v != stop:
        e = pred[v]
        edges.append(e)
        v = e.dst if reverse else e.src
    return edges if reverse else list(reversed(edges))


@dataclass(frozen=True)
class LengthResult:
    ell: Fraction
    cycle: Walk
    kappa: int


def _edge_weight(a1: int, a2: int):
    return lambda e: a1 + (a2 if e.kind == STEP else 0)


def minimal_length_reference(seq: ExtremeSeq, d=1, ds=0) -> LengthResult:
    """Longest internal cycle of the ``3n``-unrolling, one DAG pass per backward-edge target."""
    d, ds = as_rational(d), as_rational(ds)
    b, a1, a2 = _grid(d, ds)
    w = _edge_weight(a1, a2)
    kappa = 3 * seq.n
    u = _unrolled(seq, kappa)
    best = None
    for x in sorted({e.dst for e in u.back}):
        lab, pred = _path_dp(u, x, w)
        for e in u.back:
            if e.dst == x and lab[e.src] is not None:
                val = lab[e.src] + w(e)
                if best is None or val > best[0]:
                    best = (val, _trace(pred, e.src, x) + [e])
    if best is None:
        raise InternalError("unrolling has no internal cycle")
    return LengthResult(Fraction(best[0], b), Walk(tuple(best[1])), kappa)


def _unrolled_arrays(seq: ExtremeSeq, kappa: int):
    """Edge arrays of the ``kappa``-unrolling split into forward and backward parts."""
    word = unroll_word(seq, kappa)
    N = word.n
    toks = word.tokens
    m = len(toks)
    src, dst, kind = list(range(N)), [(i + 1) % N for i in range(N)], [0] * N
    for k in range(m):
        (ka, a), (kb, b) = toks[k], toks[(k + 1) % m]
        if ka == "t" and kb == "s":
            src.append(a), dst.append(b), kind.append(1)
        elif ka == "s" and kb == "t":
            src.append(a), dst.append(b), kind.append(2)
    src, dst, kind = np.array(src), np.array(dst), np.array(kind)
    ext = np.where(kind == 2, src < dst, dst <= src)
    row = np.array(greedy_rows(word))
    delta = row[dst] - row[src]
    fwd = ~ext & (((kind == 0) & (delta == 0)) | ((kind == 1) & (delta == 1)) | ((kind == 2) & (delta == -1)))
    back = ~ext & (((kind == 0) & (delta == 1)) | ((kind == 2) & (delta == 0)))
    return N, src, dst, kind, ext, fwd, back


def _syn_edge(src, dst, kind, ext, k) -> SynEdge:
    return SynEdge(int(src[k]), int(dst[k]), KINDS[int(kind[k])], bool(ext[k]))


def minimal_length_detail(seq: ExtremeSeq, d=1, ds=0, check: bool = True) -> LengthResult:
    """Heaviest internal cycle of the ``3n``-unrolling (compiled longest-path passes)."""
    from . import _kernels as K

    d, ds = as_rational(d), as_rational(ds)
    if check:
        check_sequence(seq)
        _require_uca(seq)
    b, a1, a2 = _grid(d, ds)
    kappa = 3 * seq.n
    N, src, dst, kind, ext, fwd, back = _unrolled_arrays(seq, kappa)
    w = np.where(kind == 0, a1 + a2, a1).astype(np.int64)
    fsrc, fdst, fw = src[fwd], dst[fwd], w[fwd]
    order, cnt = K.topo_order(N, fsrc, fdst)
    if cnt != N:
        raise InternalError("forward subgraph of an unrolling is cyclic")
    indptr, adj = K.csr(N, fsrc, fdst)
    bsrc, bdst, bw = src[back], dst[back], w[back]
    val, k = K.best_cycle(N, order, indptr, adj, fdst, fw, bsrc, bdst, bw)
    if k < 0:
        raise InternalError("unrolling has no internal cycle")
    x, y = int(bdst[k]), int(bsrc[k])
    rank = np.empty(N, dtype=np.int64)
    rank[order] = np.arange(N)
    lab, pred = K.single_source(N, order, rank, indptr, adj, fdst, fw, x)
    fidx = np.flatnonzero(fwd)
    bidx = np.flatnonzero(back)
    path = []
    v = y
    while v != x:
        e = int(pred[v])
        path.append(_syn_edge(src, dst, kind, ext, fidx[e]))
        v = int(fsrc[e])
    path.reverse()
    path.append(_syn_edge(src, dst, kind, ext, bidx[k]))
    cyc = Walk(tuple(path))
    if sum(a1 + (a2 if e.kind == STEP else 0) for e in cyc.edges) != int(val):
        raise InternalError("recovered cycle weight mismatch")
    return LengthResult(Fraction(int(val), b), cyc, kappa)


def minimal_length(seq: ExtremeSeq, d=1, ds=0) -> Fraction:
    return minimal_length_detail(seq, d, ds).ell


# ---------------------------------------------------------------------------
# minimal circumference
# ---------------------------------------------------------------------------


def circumference_bound(n: int, d, ds) -> int:
    """Upper end (as an integer numerator over the common denominator) of the search range."""
    _, a1, a2 = _grid(as_rational(d), as_rational(ds))
    return 10 * (a1 + a2) * n ** 3


def minimal_circumference(seq: ExtremeSeq, ell, d=1, ds=0, check: bool = True):
    """Least ``c`` on the ``1/b`` grid feasible with ``ell``; returns ``(c, model)``."""
    d, ds, ell = as_rational(d), as_rational(ds), as_rational(ell)
    if check:
        check_sequence(seq)
        _require_uca(seq)
    b, a1, a2 = _grid(d, ds)
    lo, hi = 1, circumference_bound(seq.n, d, ds)
    while lo < hi:
        mid = (lo + hi) // 2
        res = feasibility(seq, UcaDescriptor(Fraction(mid, b), ell, d, ds))
        if isinstance(res, PcaModel):
            hi = mid
        elif res.ext > 0:
            hi = mid - 1
        elif res.ext < 0:
            lo = mid + 1
        else:
            raise InternalError(f"witness with Ext = 0 at c = {Fraction(mid, b)}; ell is not minimal")
    res = feasibility(seq, UcaDescriptor(Fraction(lo, b), ell, d, ds))
    if not isinstance(res, PcaModel):
        raise InternalError(f"no feasible circumference up to {Fraction(lo, b)}")
    return Fraction(lo, b), res


# ---------------------------------------------------------------------------
# pipeline
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimalResult:
    ell: Fraction
    circ: Fraction
    model: PcaModel
    length_cycle: Walk
    d: Fraction = Fraction(1)
    ds: Fraction = Fraction(0)

    @property
    def descriptor(self) -> UcaDescriptor:
        return UcaDescriptor(self.circ, self.ell, self.d, self.ds)

    def to_json(self) -> dict:
        return {
            "c": str(self.circ),
            "ell": str(self.ell),
            "d": str(self.d),
            "ds": str(self.ds),
            "model": self.model.to_json(),
            "length_cycle": [e.to_json() for e in self.length_cycle.edges],
        }


def minimal_model(seq: ExtremeSeq, d=1, ds=0, verify: bool = True) -> MinimalResult:
    d, ds = as_rational(d), as_rational(ds)
    check_sequence(seq)
    _require_uca(seq)
    lr = minimal_length_detail(seq, d, ds, check=False)
    c, model = minimal_circumference(seq, lr.ell, d, ds, check=False)
    if verify:
        b, _, _ = _grid(d, ds)
        step = Fraction(1, b)
        for cc, ll in ((c - step, lr.ell), (c, lr.ell - step)):
            if cc > 0 and ll > 0 and isinstance(feasibility(seq, UcaDescriptor(cc, ll, d, ds)), PcaModel):
                raise InternalError(f"({cc}, {ll}) is feasible; result is not minimal")
    return MinimalResult(lr.ell, c, model, lr.cycle, d, ds)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------


def cycle_stats(seq: ExtremeSeq, limit: int | None = None) -> set:
    """Distinct ``(Jump, Ext, |W|, sigma)`` tuples over all simple cycles of the synthetic graph."""
    return {w.stats() for w in enumerate_cycles(build_synthetic(seq), limit=limit)}


def feasible_c_interval(stats, ell: Fraction, d: Fraction, ds: Fraction):
    """Exact ``(lo, hi)`` range of ``c`` making every cycle non-positive, or None.

    ``lo`` is exclusive of 0 only through the positivity of ``c``; ``hi`` may be None (unbounded).
    """
    lo, hi = Fraction(0), None
    for jump, ext, size, sigma in stats:
        rest = ell * jump + d * size + ds * sigma
        if ext == 0:
            if rest > 0:
                return None
        elif ext > 0:
            bound = -rest / ext
            hi = bound if hi is None else min(hi, bound)
        else:
            lo = max(lo, rest / -ext)
    if hi is not None and hi < lo:
        return None
    return lo, hi


def brute_force_minimal(seq: ExtremeSeq, d=1, ds=0, stats=None):
    """Lexicographically least feasible ``(ell, c)`` on the ``1/b`` grid, via cycle enumeration."""
    d, ds = as_rational(d), as_rational(ds)
    check_sequence(seq)
    if seq.n > max_brute():
        raise TooLarge(f"brute force refused for n={seq.n}")
    b, _, _ = _grid(d, ds)
    stats = cycle_stats(seq) if stats is None else stats
    n = seq.n
    kmax = circumference_bound(n, d, ds)
    for k in range(1, 2 * n * n * int((d + ds) * b) + 1):
        ell = Fraction(k, b)
        iv = feasible_c_interval(stats, ell, d, ds)
        if iv is None:
            continue
        lo, hi = iv
        a = max(1, math.ceil(lo * b))
        c = Fraction(a, b)
        if (hi is None or c <= hi) and a <= kmax:
            return ell, c
    raise NotUca("no feasible (ell, c) on the search grid")


def grid_uca_oracle(seq: ExtremeSeq, stats=None) -> bool:
    """UCA test at ``ell = 2n^2``, ``d = 1``, ``d_s = 0`` over every ``c``."""
    stats = cycle_stats(seq) if stats is None else stats
    n = seq.n
    iv = feasible_c_interval(stats, Fraction(2 * n * n), Fraction(1), Fraction(0))
    return iv is not None and (iv[1] is None or iv[1] > 0)
