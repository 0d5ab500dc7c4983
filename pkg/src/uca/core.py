"""Exact PCA models, their extreme words, and the symmetry operations on them.

A model lives on a circle of circumference ``c`` with a distinguished point 0.
Positions are :class:`fractions.Fraction` values in ``[0, c)``; nothing in the
package ever touches a float.

The combinatorial view of a model is its *extreme word*: the circular sequence
of start/end tokens read clockwise from 0.  Tokens are pairs ``("s", i)`` or
``("t", i)`` where ``i`` is the arc id in start order.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InvalidModel, InvalidSequence, MalformedInput, RowMissing

log = logging.getLogger(__name__)

Token = tuple  # ("s" | "t", arc id)


def as_rational(value) -> Fraction:
    """Parse ``"p/q"``, integer literals, exact decimals, ints and Fractions."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise MalformedInput(f"refusing non-exact rational {value!r}")
    try:
        return Fraction(value if isinstance(value, int) else str(value).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInput(f"not a rational: {value!r}") from exc


def fmt(q: Fraction) -> str:
    return str(q)


# ---------------------------------------------------------------------------
# extreme words
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ExtremeSeq:
    """Circular word of ``2n`` extremes read clockwise from the point 0."""

    tokens: tuple

    def __post_init__(self):
        object.__setattr__(self, "tokens", tuple((k, int(i)) for k, i in self.tokens))

    @property
    def n(self) -> int:
        return len(self.tokens) // 2

    def __len__(self):
        return len(self.tokens)

    def __iter__(self):
        return iter(self.tokens)

    def __getitem__(self, k):
        return self.tokens[k]

    def __str__(self):
        return " ".join(f"{k}{i}" for k, i in self.tokens)

    @classmethod
    def parse(cls, text: str) -> "ExtremeSeq":
        toks = []
        for raw in text.split():
            kind, rest = raw[:1], raw[1:]
            if kind not in ("s", "t") or not rest.isdigit():
                raise MalformedInput(f"bad extreme token {raw!r}")
            toks.append((kind, int(rest)))
        seq = cls(tuple(toks))
        check_sequence(seq)
        return seq

    def positions(self):
        """Return ``(start_pos, end_pos)`` lists indexed by arc id."""
        n = self.n
        ps, pt = [None] * n, [None] * n
        for k, (kind, i) in enumerate(self.tokens):
            (ps if kind == "s" else pt)[i] = k
        return ps, pt


def relabel(tokens: Iterable) -> ExtremeSeq:
    """Renumber arcs so that ids follow the order of the start tokens.

    Tokens may carry arbitrary hashable labels; the returned word uses 0..n-1.
    """
    tokens = list(tokens)
    ids = {}
    for kind, lab in tokens:
        if kind == "s":
            ids[lab] = len(ids)
    return ExtremeSeq(tuple((kind, ids[lab]) for kind, lab in tokens))


def sequence_problems(seq: ExtremeSeq) -> list:
    """Every violated word invariant, as human-readable strings."""
    toks = seq.tokens
    if len(toks) % 2:
        return ["odd number of extremes"]
    n = len(toks) // 2
    problems = []
    seen_s, seen_t = {}, {}
    for k, (kind, i) in enumerate(toks):
        if kind not in ("s", "t"):
            problems.append(f"unknown token kind {kind!r}")
            continue
        if not 0 <= i < n:
            problems.append(f"arc id {i} out of range")
            continue
        seen = seen_s if kind == "s" else seen_t
        if i in seen:
            problems.append(f"duplicate token {kind}{i}")
        seen[i] = k
    if problems:
        return problems
    if len(seen_s) != n or len(seen_t) != n:
        return ["each arc needs exactly one start and one end"]
    order = sorted(range(n), key=lambda i: seen_s[i])
    if order != list(range(n)):
        problems.append("start tokens are not in id order")
    m = 2 * n
    ps = [seen_s[i] for i in range(n)]
    pt = [seen_t[i] for i in range(n)]
    for a in range(n):
        span = (pt[a] - ps[a]) % m
        for b in range(n):
            if a == b:
                continue
            os_, ot = (ps[b] - ps[a]) % m, (pt[b] - ps[a]) % m
            if os_ < span and ot < span:
                if os_ < ot:
                    problems.append(f"inclusion: arc {b} inside arc {a}")
                elif a < b:
                    problems.append(f"arcs {a} and {b} cover the circle")
    return problems


def check_sequence(seq: ExtremeSeq) -> ExtremeSeq:
    problems = sequence_problems(seq)
    if problems:
        raise InvalidSequence(problems)
    return seq


def rotate_word(seq: ExtremeSeq, k: int) -> ExtremeSeq:
    """Move the point 0 to just before token ``k``; arcs are renumbered."""
    toks = seq.tokens
    k %= len(toks)
    return relabel(toks[k:] + toks[:k])


def reverse_word(seq: ExtremeSeq) -> ExtremeSeq:
    """Word of the reverse model, with 0 placed at the start of the reversed last arc."""
    flipped = [("t" if kind == "s" else "s", i) for kind, i in reversed(seq.tokens)]
    last = seq.n - 1
    k = flipped.index(("s", last))
    return relabel(flipped[k:] + flipped[:k])


def canonical_word(seq: ExtremeSeq) -> tuple:
    """Least rotation of the word; equal iff the models are shift equivalent."""
    return min(rotate_word(seq, k).tokens for k in range(len(seq)))


def intersects(seq: ExtremeSeq, a: int, b: int, _pos=None) -> bool:
    ps, pt = _pos or seq.positions()
    m = len(seq)

    def inside(x, p):
        off = (p - ps[x]) % m
        return 0 < off < (pt[x] - ps[x]) % m

    return a == b or inside(a, ps[b]) or inside(b, ps[a])


def overlaps_on_line(seq: ExtremeSeq, a: int, b: int, _pos=None) -> bool:
    """Intersection with arcs read as intervals of the cut circle; external arcs run past the end."""
    ps, pt = _pos or seq.positions()
    a, b = min(a, b), max(a, b)
    return a == b or pt[a] < ps[a] or ps[b] < pt[a]


def greedy_rows(seq: ExtremeSeq) -> list:
    """Row of each arc: a new row opens when an arc misses the current row's leftmost arc.

    Misses are judged on the cut circle, so a wrapping arc never reaches back to row leaders.
    """
    pos = seq.positions()
    rows, lead, r = [], 0, 0
    for i in range(seq.n):
        if i and not overlaps_on_line(seq, lead, i, pos):
            r += 1
            lead = i
        rows.append(r)
    return rows


# ---------------------------------------------------------------------------
# geometric models
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Arc:
    s: Fraction
    t: Fraction


@dataclass(frozen=True)
class UcaDescriptor:
    c: Fraction
    ell: Fraction
    d: Fraction = Fraction(1)
    ds: Fraction = Fraction(0)

    def __post_init__(self):
        for name in ("c", "ell", "d", "ds"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.c <= 0 or self.ell <= 0 or self.d <= 0 or self.ds < 0:
            raise MalformedInput("descriptor needs c, ell, d > 0 and ds >= 0")


@dataclass(frozen=True)
class PcaModel:
    circumference: Fraction
    arcs: tuple

    @property
    def n(self) -> int:
        return len(self.arcs)

    def is_external(self, i: int) -> bool:
        a = self.arcs[i]
        return a.t < a.s

    def to_json(self) -> dict:
        return {
            "circumference": fmt(self.circumference),
            "arcs": [{"s": fmt(a.s), "t": fmt(a.t)} for a in self.arcs],
        }

    def to_text(self) -> str:
        lines = [f"circle {fmt(self.circumference)}"]
        lines += [f"{fmt(a.s)} {fmt(a.t)}" for a in self.arcs]
        return "\n".join(lines) + "\n"


def model_problems(c: Fraction, pairs: Sequence) -> list:
    problems = []
    if c <= 0:
        return ["circumference must be positive"]
    if not pairs:
        problems.append("model has no arcs")
    extremes = []
    for k, (s, t) in enumerate(pairs):
        for name, x in (("s", s), ("t", t)):
            if not 0 <= x < c:
                problems.append(f"arc {k}: {name}={x} outside [0, {c})")
        extremes += [s, t]
    if len(set(extremes)) != len(extremes):
        problems.append("extremes are not pairwise distinct")
    if problems:
        return problems
    seq = _word_of(pairs)
    problems += [p for p in sequence_problems(seq) if "id order" not in p]
    return problems


def _word_of(pairs) -> ExtremeSeq:
    order = sorted(range(len(pairs)), key=lambda k: pairs[k][0])
    rank = {k: i for i, k in enumerate(order)}
    ext = [(s, "s", rank[k]) for k, (s, _) in enumerate(pairs)]
    ext += [(t, "t", rank[k]) for k, (_, t) in enumerate(pairs)]
    ext.sort(key=lambda e: e[0])
    return ExtremeSeq(tuple((kind, i) for _, kind, i in ext))


def make_model(c, pairs: Iterable, warn: bool = False) -> PcaModel:
    """Validated model with arcs re-sorted by start; raises :class:`InvalidModel`."""
    c = as_rational(c)
    pairs = [(as_rational(s), as_rational(t)) for s, t in pairs]
    problems = model_problems(c, pairs)
    if problems:
        raise InvalidModel(problems)
    if warn and any(pairs[k][0] > pairs[k + 1][0] for k in range(len(pairs) - 1)):
        log.warning("arcs not listed in start order; re-sorting")
    pairs.sort(key=lambda p: p[0])
    return PcaModel(c, tuple(Arc(s, t) for s, t in pairs))


def extreme_sequence(m: PcaModel) -> ExtremeSeq:
    return _word_of([(a.s, a.t) for a in m.arcs])


def realize(seq: ExtremeSeq) -> PcaModel:
    """Unit-spaced witness: circumference ``2n`` with token ``k`` at position ``k``."""
    check_sequence(seq)
    ps, pt = seq.positions()
    return PcaModel(Fraction(len(seq)), tuple(Arc(Fraction(s), Fraction(t)) for s, t in zip(ps, pt)))


def are_equivalent(m1: PcaModel, m2: PcaModel) -> bool:
    return extreme_sequence(m1) == extreme_sequence(m2)


def shift(m: PcaModel, p) -> PcaModel:
    """Relocate the point 0 to ``p``."""
    c, p = m.circumference, as_rational(p)
    return make_model(c, [((a.s - p) % c, (a.t - p) % c) for a in m.arcs])


def reverse(m: PcaModel) -> PcaModel:
    """Mirror every arc to ``(c - t, c - s)`` and anchor 0 at the start of the mirrored last arc."""
    c = m.circumference
    anchor = m.arcs[-1].t
    return make_model(c, [((anchor - a.t) % c, (anchor - a.s) % c) for a in m.arcs])


def align(m: PcaModel, i: int) -> PcaModel:
    """Place 0 at the start of the leftmost arc of row ``i``."""
    rows = greedy_rows(extreme_sequence(m))
    if i not in (0, 1) or i not in rows:
        raise RowMissing(f"model has no row {i}")
    return shift(m, m.arcs[rows.index(i)].s)


@dataclass(frozen=True)
class Classification:
    universal_arcs: frozenset
    is_complete: bool
    is_universal_free: bool


def classify(m) -> Classification:
    seq = m if isinstance(m, ExtremeSeq) else extreme_sequence(m)
    pos = seq.positions()
    n = seq.n
    uni = frozenset(a for a in range(n) if all(intersects(seq, a, b, pos) for b in range(n)))
    return Classification(uni, len(uni) == n, not uni)


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------


def parse_model(text: str) -> PcaModel:
    """Read the JSON or compact text model format."""
    stripped = text.strip()
    if not stripped:
        raise MalformedInput("empty model text")
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
            c = doc["circumference"]
            pairs = [(a["s"], a["t"]) for a in doc["arcs"]]
        except (ValueError, KeyError, TypeError) as exc:
            raise MalformedInput(f"bad JSON model: {exc}") from exc
        return make_model(c, pairs, warn=True)
    lines = [ln.split("#")[0].strip() for ln in stripped.splitlines()]
    lines = [ln for ln in lines if ln]
    head = lines[0].split()
    if len(head) != 2 or head[0] != "circle":
        raise MalformedInput("compact format must start with 'circle <c>'")
    pairs = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 2:
            raise MalformedInput(f"expected 's t' pair, got {ln!r}")
        pairs.append(tuple(parts))
    return make_model(head[1], pairs, warn=True)


def dump_model(m: PcaModel) -> str:
    return json.dumps(m.to_json())
