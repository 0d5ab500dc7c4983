"""Co-component structure of PCA models, joins, recombinations and minimum models.

Everything here works on extreme words.  An *aligned* word opens with the
start of a co-start arc, so it always begins with ``s0``.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

import networkx as nx

from .core import (
    ExtremeSeq,
    PcaModel,
    as_rational,
    check_sequence,
    classify,
    extreme_sequence,
    greedy_rows,
    intersects,
    make_model,
    relabel,
    reverse_word,
    rotate_word,
    canonical_word,
)
from .errors import (
    HasUniversalArc,
    InternalError,
    NotAligned,
    NotUca,
    TooLarge,
    UnsupportedStructure,
)
from .minrep import greedy_cycle, minimal_model, recognize_uca
from .synthetic import SynEdge, SyntheticGraph, _external, build_synthetic, model_from_synthetic


def _word(m) -> ExtremeSeq:
    return m if isinstance(m, ExtremeSeq) else extreme_sequence(m)


# ---------------------------------------------------------------------------
# boundaries and co-components
# ---------------------------------------------------------------------------


def boundaries(s: SyntheticGraph) -> list:
    """Greedy nose cycles with exactly two noses, one per distinct vertex set."""
    seen, out = set(), []
    for v in range(s.n):
        cyc = greedy_cycle(s, "nose", v)
        key = frozenset(cyc.vertices)
        if key in seen:
            continue
        seen.add(key)
        if cyc.noses == 2:
            out.append(cyc)
    out.sort(key=lambda c: min(c.vertices))
    return out


def co_starts(s: SyntheticGraph) -> list:
    return sorted({e.dst for cyc in boundaries(s) for e in cyc.edges if e.kind == "nose"})


def is_aligned(seq: ExtremeSeq) -> bool:
    return seq.tokens[0] == ("s", 0) and 0 in co_starts(build_synthetic(seq))


def align_word(seq: ExtremeSeq, row: int) -> ExtremeSeq:
    """Rotate so that the word opens at the leftmost arc of ``row`` (0 or 1)."""
    rows = greedy_rows(seq)
    if row not in rows:
        raise NotAligned(f"word has no row {row}")
    return rotate_word(seq, seq.tokens.index(("s", rows.index(row))))


@dataclass(frozen=True)
class CoDecomposition:
    k: int
    word: ExtremeSeq  # the aligned input
    co_starts: tuple
    co_ends: tuple
    families: tuple  # family i -> sorted arc ids
    submodels: tuple  # aligned words

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "word": str(self.word),
            "co_starts": list(self.co_starts),
            "co_ends": list(self.co_ends),
            "families": [list(f) for f in self.families],
            "submodels": [str(w) for w in self.submodels],
        }


def restrict(seq: ExtremeSeq, arcs) -> ExtremeSeq:
    """Subword on ``arcs``, rotated to open at the start of its first arc."""
    keep = set(arcs)
    toks = [t for t in seq.tokens if t[1] in keep]
    k = toks.index(("s", min(keep)))
    return relabel(toks[k:] + toks[:k])


def complement_components(seq: ExtremeSeq) -> list:
    pos = seq.positions()
    g = nx.Graph()
    g.add_nodes_from(range(seq.n))
    for a in range(seq.n):
        for b in range(a + 1, seq.n):
            if not intersects(seq, a, b, pos):
                g.add_edge(a, b)
    return sorted((sorted(c) for c in nx.connected_components(g)), key=lambda c: c[0])


def co_components(m) -> CoDecomposition:
    seq = _word(m)
    check_sequence(seq)
    if classify(seq).universal_arcs:
        raise HasUniversalArc("co-components need a universal-free model")
    comps = [tuple(c) for c in complement_components(seq)]
    starts = co_starts(build_synthetic(seq))
    if len(comps) == 1 and not starts:
        # a single co-component need not have boundaries; it is its own submodel
        return CoDecomposition(1, seq, (), (), (tuple(range(seq.n)),), (seq,))
    if not starts:
        raise InternalError("several co-components but no boundaries")
    if not is_aligned(seq):
        seq = rotate_word(seq, seq.tokens.index(("s", starts[0])))
        starts = co_starts(build_synthetic(seq))
        if not starts or starts[0] != 0:
            raise InternalError("rotation to a co-start did not align the word")
    n = seq.n
    k = len(starts) // 2
    if len(starts) != 2 * k or k == 0:
        raise InternalError(f"odd number of co-starts: {starts}")
    ends = [(c - 1) % n for c in starts]
    fam = [[] for _ in range(k)]
    for m_, c in enumerate(starts):
        nxt = starts[m_ + 1] if m_ + 1 < 2 * k else n
        fam[m_ % k].extend(range(c, nxt))
    fam = [tuple(sorted(f)) for f in fam]
    comps = [tuple(c) for c in complement_components(seq)]
    if sorted(comps) != sorted(fam):
        raise InternalError(f"co-start blocks {fam} disagree with complement components {comps}")
    subs = tuple(restrict(seq, f) for f in fam)
    return CoDecomposition(k, seq, tuple(starts), tuple(sorted(ends)), tuple(fam), subs)


# ---------------------------------------------------------------------------
# join and recombination
# ---------------------------------------------------------------------------


def _row_leads(seq: ExtremeSeq):
    rows = greedy_rows(seq)
    if seq.tokens[0] != ("s", 0) or max(rows) != 1:
        raise NotAligned("join operands must be aligned words with exactly two rows")
    return 0, rows.index(1)


def _row_ends(seq: ExtremeSeq):
    rows = greedy_rows(seq)
    if seq.tokens[0] != ("s", 0) or max(rows) != 1:
        raise NotAligned("join operands must be aligned words with exactly two rows")
    a1 = rows.index(1)
    return (0, a1), (a1 - 1, seq.n - 1)


def join(m1, m2) -> ExtremeSeq:
    """Join of two aligned models through their synthetic graphs.

    Arcs are renumbered as row 0 of ``m1``, row 0 of ``m2``, row 1 of ``m1``,
    row 1 of ``m2``.  With ``A_r``/``B_r`` the leftmost/rightmost arcs of row
    ``r``, the bridging steps become ``B_r -> A'_r`` and ``B'_r -> A_{1-r}``
    and the bridging hollows become ``B_r -> A'_{1-r}`` and ``B'_r -> A_r``.
    """
    w1, w2 = _word(m1), _word(m2)
    (a, b), (a_, b_) = _row_ends(w1), _row_ends(w2)
    n1, n2 = w1.n, w2.n
    new1 = {i: (i if i < a[1] else i + a_[1]) for i in range(n1)}
    new2 = {i: (a[1] + i if i < a_[1] else n1 + i) for i in range(n2)}
    edges = set()
    for old, ends, lead, g in ((new1, b, a, build_synthetic(w1)), (new2, b_, a_, build_synthetic(w2))):
        for e in g.edges:
            r = ends.index(e.src) if e.src in ends else None
            if r is not None and (
                (e.kind == "step" and e.dst == lead[1 - r]) or (e.kind == "hollow" and e.dst == lead[r])
            ):
                continue
            edges.add((old[e.src], old[e.dst], e.kind))
    A = [new1[x] for x in a]
    B = [new1[x] for x in b]
    A_ = [new2[x] for x in a_]
    B_ = [new2[x] for x in b_]
    for r in (0, 1):
        edges.add((B[r], A_[r], "step"))
        edges.add((B_[r], A[1 - r], "step"))
        edges.add((B[r], A_[1 - r], "hollow"))
        edges.add((B_[r], A[r], "hollow"))
    n = n1 + n2
    syn = SyntheticGraph(
        n, tuple(SynEdge(x, y, kd, _external(kd, x, y)) for x, y, kd in sorted(edges)), None
    )
    return model_from_synthetic(syn)


def glue_words(m1, m2) -> ExtremeSeq:
    """Glue two aligned words: cut each before the ends of its two row leaders."""
    w1, w2 = _word(m1), _word(m2)
    parts = []
    for tag, w in (("a", w1), ("b", w2)):
        a0, a1 = _row_leads(w)
        toks = [(kind, (tag, i)) for kind, i in w.tokens]
        p0 = toks.index(("t", (tag, a0)))
        p1 = toks.index(("t", (tag, a1)))
        parts.append((toks[:p0], toks[p0:p1], toks[p1:]))
    (p1, p2, p3), (q1, q2, q3) = parts
    return relabel(p1 + q3 + q1 + p2 + q2 + p3)


def join_all(words) -> ExtremeSeq:
    words = list(words)
    out = words[0]
    for w in words[1:]:
        out = join(out, w)
    return out


def reverse_aligned(seq: ExtremeSeq) -> ExtremeSeq:
    rev = reverse_word(seq)
    if not is_aligned(rev):
        starts = co_starts(build_synthetic(rev))
        rev = rotate_word(rev, rev.tokens.index(("s", starts[0])))
    return rev


@dataclass(frozen=True)
class Recombination:
    pi: tuple
    phi: tuple
    psi: tuple

    @classmethod
    def identity(cls, k: int) -> "Recombination":
        return cls(tuple(range(k)), (1,) * k, (0,) * k)

    def to_json(self) -> dict:
        return {"pi": list(self.pi), "phi": list(self.phi), "psi": list(self.psi)}


def transform(sub: ExtremeSeq, phi: int, psi: int) -> ExtremeSeq:
    w = sub if phi == 1 else reverse_aligned(sub)
    return align_word(w, 1) if psi else w


def recombine(m, r: Recombination, dec: CoDecomposition | None = None) -> ExtremeSeq:
    dec = dec or co_components(m)
    if len(r.pi) != dec.k:
        raise ValueError("recombination size differs from the number of co-components")
    return join_all(transform(dec.submodels[r.pi[i]], r.phi[i], r.psi[i]) for i in range(dec.k))


def all_recombinations(k: int):
    for pi in permutations(range(k)):
        for phi in product((1, -1), repeat=k):
            for psi in product((0, 1), repeat=k):
                yield Recombination(pi, phi, psi)


# ---------------------------------------------------------------------------
# minimum models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MinimumResult:
    ell: Fraction
    circ: Fraction
    model: PcaModel
    chosen: object  # Recombination, or the tags "complete" / "singular"

    def to_json(self) -> dict:
        chosen = self.chosen.to_json() if isinstance(self.chosen, Recombination) else self.chosen
        return {"c": str(self.circ), "ell": str(self.ell), "model": self.model.to_json(), "chosen": chosen}


def complete_model(n: int, d=1, ds=0) -> PcaModel:
    d, ds = as_rational(d), as_rational(ds)
    delta = d + ds
    ell = (n - 1) * delta + d
    c = 2 * (n - 1) * delta + 2 * d
    return make_model(c, [(i * delta, (i * delta + ell) % c) for i in range(n)])


def max_k() -> int:
    return int(os.environ.get("UCA_MAX_BRUTE", "8"))


def _evaluate(job):
    cand, d, ds = job
    if not recognize_uca(cand).is_uca:
        return None
    return minimal_model(cand, d, ds, verify=False)


def minimum_model(m, d=1, ds=0, force: bool = False, threads: int = 1) -> MinimumResult:
    """Least ``(ell, c)`` over all isomorphic models; ties keep the first recombination enumerated."""
    d, ds = as_rational(d), as_rational(ds)
    seq = _word(m)
    check_sequence(seq)
    cls = classify(seq)
    if cls.is_complete:
        model = complete_model(seq.n, d, ds)
        return MinimumResult(model.arcs[0].t - model.arcs[0].s, model.circumference, model, "complete")
    if not cls.is_universal_free:
        raise UnsupportedStructure("models with universal arcs must be complete")
    dec = co_components(seq)
    if dec.k == 1:
        res = minimal_model(seq, d, ds)
        return MinimumResult(res.ell, res.circ, res.model, "singular")
    if dec.k > max_k() and not force:
        raise TooLarge(f"{dec.k} co-components exceed the enumeration limit")
    cands, seen = [], set()
    for r in all_recombinations(dec.k):
        cand = recombine(seq, r, dec)
        key = canonical_word(cand)
        if key not in seen:
            seen.add(key)
            cands.append((cand, r))
    jobs = [(cand, d, ds) for cand, _ in cands]
    if threads > 1:
        with ProcessPoolExecutor(threads) as pool:
            results = list(pool.map(_evaluate, jobs, chunksize=8))
    else:
        results = [_evaluate(j) for j in jobs]
    best = None
    for res, (_, r) in zip(results, cands):
        if res is not None and (best is None or (res.ell, res.circ) < (best[0].ell, best[0].circ)):
            best = (res, r)
    if best is None:
        raise NotUca("no recombination is UCA")
    res, r = best
    return MinimumResult(res.ell, res.circ, res.model, r)


# ---------------------------------------------------------------------------
# singularity
# ---------------------------------------------------------------------------


def all_pca_words(n: int):
    """Every valid word with ``n`` arcs that opens with ``s0``."""
    from itertools import combinations

    from .core import sequence_problems

    for r in range(n):
        ends = [("t", (r + k) % n) for k in range(n)]
        for slots in combinations(range(1, 2 * n), n - 1):
            toks, si, ti = [("s", 0)], 1, 0
            chosen = set(slots)
            for p in range(1, 2 * n):
                if p in chosen:
                    toks.append(("s", si))
                    si += 1
                else:
                    toks.append(ends[ti])
                    ti += 1
            seq = ExtremeSeq(tuple(toks))
            if not sequence_problems(seq):
                yield seq


def intersection_graph(seq: ExtremeSeq) -> nx.Graph:
    pos = seq.positions()
    g = nx.Graph()
    g.add_nodes_from(range(seq.n))
    for a in range(seq.n):
        for b in range(a + 1, seq.n):
            if intersects(seq, a, b, pos):
                g.add_edge(a, b)
    return g


def isomorphic_canonicals(seq: ExtremeSeq) -> set:
    """Canonical words of every PCA word whose intersection graph is isomorphic to ``seq``'s."""
    g = intersection_graph(seq)
    degs = sorted(d for _, d in g.degree())
    out = set()
    for w in all_pca_words(seq.n):
        h = intersection_graph(w)
        if sorted(d for _, d in h.degree()) == degs and nx.is_isomorphic(g, h):
            out.add(canonical_word(w))
    return out


def recombination_canonicals(seq: ExtremeSeq) -> set:
    dec = co_components(seq)
    return {canonical_word(recombine(seq, r, dec)) for r in all_recombinations(dec.k)}


def is_singular(m, limit: int = 7) -> bool:
    seq = _word(m)
    check_sequence(seq)
    own = {canonical_word(seq), canonical_word(reverse_word(seq))}
    if classify(seq).is_universal_free:
        dec = co_components(seq)
        if dec.k == 1:
            return True
        if dec.k > max_k():
            raise TooLarge("too many co-components to enumerate")
        return recombination_canonicals(seq) <= own
    if seq.n > limit:
        raise TooLarge(f"isomorphism census refused for n={seq.n}")
    return isomorphic_canonicals(seq) <= own
