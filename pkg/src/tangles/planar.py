"""Planar (large-N) perturbation theory of the two-coupling O(n) matrix model.

The action is ``N tr(-t/2 sum M_a^2 + g1/4 sum (M_a M_b)^2 + g2/2 sum M_a^2 M_b^2)``.

Correlators of single-trace words come from the planar Schwinger-Dyson
(loop) equations: the first letter of a word is Wick-contracted either with
another letter of the same word, which splits the trace into two factorised
traces, or with a new vertex, which inserts three letters.  Words carry
concrete colour labels; summing a vertex colour over a label that does not
occur yet contributes ``n - (number of labels present)`` and is how powers of
``n`` arise.  Connected correlators are free cumulants, obtained by Moebius
inversion over non-crossing partitions.

The free energy is computed independently by brute force: every labelled
pairing of the vertex half-edges is generated, and the faces (index loops)
and colour loops of the resulting fat graph are counted.  The same
enumeration applied to a single trace (:func:`enumerate_correlator`)
cross-checks the loop equations at low order.
"""

from __future__ import annotations

import itertools
import string
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .algebra import BiSeries, ColorPoly

DEFAULT_ORDER = 4
MAX_ORDER = 6

_ONE = ColorPoly([1])
_N = ColorPoly.n()


class BudgetError(ValueError):
    """Requested perturbative order exceeds the enumeration budget."""


def check_budget(P: int, limit: int = MAX_ORDER) -> None:
    if P < 0:
        raise ValueError("order must be >= 0")
    if P > limit:
        raise BudgetError(f"order {P} exceeds the enumeration budget of {limit}")


# -- words -----------------------------------------------------------------------


@dataclass(frozen=True)
class TraceWord:
    """A word ``tr M_{c1} ... M_{ck}``.

    Labels in ``summed`` are summed over all ``n`` colours; the others are
    fixed and pairwise distinct.
    """

    labels: tuple[str, ...]
    summed: frozenset[str] = frozenset()

    @classmethod
    def parse(cls, text: str, summed: Iterable[str] = ()) -> "TraceWord":
        return cls(tuple(text), frozenset(summed))

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def external(self) -> list[str]:
        return sorted(set(self.labels) - self.summed)

    def __str__(self) -> str:
        return "".join(self.labels)


@dataclass(frozen=True)
class VertexSet:
    k1: int  # vertices g1/4 tr(M_a M_b M_a M_b)
    k2: int  # vertices g2/2 tr(M_a M_a M_b M_b)

    def __post_init__(self):
        if self.k1 < 0 or self.k2 < 0:
            raise ValueError("vertex counts must be >= 0")

    @property
    def order(self) -> int:
        return self.k1 + self.k2

    @property
    def prefactor(self) -> Fraction:
        """``(1/4)^k1 (1/2)^k2 / (k1! k2!)``."""
        return Fraction(1, 4**self.k1 * 2**self.k2 * factorial(self.k1) * factorial(self.k2))


def canonical(word: Sequence) -> tuple[int, ...]:
    """Relabel by first appearance, minimised over rotations and reversal.

    The planar trace is cyclic, and transposing every matrix leaves the
    action invariant while reversing each word.
    """
    if not word:
        return ()
    best = None
    L = len(word)
    for seq in (tuple(word), tuple(reversed(word))):
        for r in range(L):
            rot = seq[r:] + seq[:r]
            relabel: dict = {}
            out = tuple(relabel.setdefault(x, len(relabel)) for x in rot)
            if best is None or out < best:
                best = out
    return best


# -- truncated bivariate polynomials as plain dicts (hot path) -------------------------


def _mul(a: dict, b: dict, budget: int) -> dict:
    out: dict = {}
    for (j1, k1), c1 in a.items():
        for (j2, k2), c2 in b.items():
            j, k = j1 + j2, k1 + k2
            if j + k <= budget:
                out[(j, k)] = out.get((j, k), 0) + c1 * c2
    return out


def _acc(out: dict, a: dict, scale=None, shift=(0, 0)) -> None:
    dj, dk = shift
    for (j, k), c in a.items():
        key = (j + dj, k + dk)
        out[key] = out.get(key, 0) + (c if scale is None else c * scale)


# -- the loop-equation engine ---------------------------------------------------------


class PlanarModel:
    """Memoised planar moments at fixed propagator weight ``1/t``."""

    def __init__(self, t=1):
        t = Fraction(t)
        if t == 0:
            raise ValueError("t must be nonzero")
        self.t = t
        self._inv_t = 1 / t
        self._memo: dict = {}

    def moment(self, word: Sequence, budget: int) -> dict:
        """``<(1/N) tr word>`` for concrete labels, as ``{(j, k): ColorPoly}``."""
        return self._moment(canonical(word), budget)

    def _moment(self, w: tuple, budget: int) -> dict:
        key = (w, budget)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = self._compute(w, budget)
        self._memo[key] = res
        return res

    def _compute(self, w: tuple, budget: int) -> dict:
        if not w:
            return {(0, 0): _ONE}
        if len(w) % 2:
            return {}
        counts: dict = {}
        for x in w:
            counts[x] = counts.get(x, 0) + 1
        if any(c % 2 for c in counts.values()):
            return {}  # M_a -> -M_a for a single colour is a symmetry
        c, rest = w[0], w[1:]
        out: dict = {}
        for j, x in enumerate(rest):
            if x == c:
                left = self._moment(canonical(rest[:j]), budget)
                if not left:
                    continue
                right = self._moment(canonical(rest[j + 1 :]), budget)
                _acc(out, _mul(left, right, budget))
        if budget > 0:
            m = len(counts)
            fresh = m  # labels are 0..m-1 after canonicalisation
            for b in list(range(m)) + [fresh]:
                weight = None if b < m else _N - m
                ins1 = self._moment(canonical((b, c, b) + rest), budget - 1)
                _acc(out, ins1, weight, (1, 0))
                for ins in ((c, b, b), (b, b, c)):
                    ins2 = self._moment(canonical(ins + rest), budget - 1)
                    _acc(out, ins2, weight, (0, 1))
        return {jk: v * self._inv_t for jk, v in out.items() if v != 0}

    # -- summed words and cumulants --

    def word_moment(self, word: TraceWord, budget: int) -> dict:
        """Moment of a word whose ``summed`` labels run over all colours."""
        return self._sum_over_labels(word, budget, self.moment)

    def word_cumulant(self, word: TraceWord, budget: int) -> dict:
        return self._sum_over_labels(word, budget, self.cumulant)

    def _sum_over_labels(self, word: TraceWord, budget: int, fn) -> dict:
        fixed = word.external
        summed = sorted(set(word.labels) & word.summed)
        out: dict = {}
        for blocks in _set_partitions(summed):
            # each block is one colour; it either equals a fixed label or is new
            for targets in itertools.product([None] + fixed, repeat=len(blocks)):
                used = [t for t in targets if t is not None]
                if len(set(used)) != len(used):
                    continue  # two blocks mapped to the same fixed colour would merge them
                new = sum(1 for t in targets if t is None)
                weight = _ONE
                for i in range(new):
                    weight = weight * (_N - (len(fixed) + i))
                assign = {}
                for bi, (block, tgt) in enumerate(zip(blocks, targets)):
                    for lab in block:
                        assign[lab] = tgt if tgt is not None else f"#{bi}"
                concrete = tuple(assign.get(x, x) for x in word.labels)
                _acc(out, fn(concrete, budget), weight)
        return {jk: v for jk, v in out.items() if v != 0}

    def cumulant(self, word: Sequence, budget: int) -> dict:
        """Free cumulant of the positions of ``word`` (planar connected part)."""
        return self._cumulant(canonical(word), budget)

    def _cumulant(self, w: tuple, budget: int) -> dict:
        key = ("k", w, budget)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        res = dict(self._moment(w, budget))
        L = len(w)
        for blocks in non_crossing_partitions(L):
            if len(blocks) == 1:
                continue
            prod: dict = {(0, 0): _ONE}
            for block in blocks:
                sub = self._cumulant(canonical(tuple(w[i] for i in block)), budget)
                prod = _mul(prod, sub, budget)
                if not prod:
                    break
            _acc(res, prod, -1)
        res = {jk: v for jk, v in res.items() if v != 0}
        self._memo[key] = res
        return res


def _set_partitions(items: list) -> list[list[list]]:
    if not items:
        return [[]]
    first, rest = items[0], items[1:]
    out = []
    for part in _set_partitions(rest):
        out.append([[first]] + part)
        for i in range(len(part)):
            out.append(part[:i] + [[first] + part[i]] + part[i + 1 :])
    return out


@lru_cache(maxsize=None)
def non_crossing_partitions(L: int) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All non-crossing partitions of ``range(L)``."""

    def rec(points: tuple) -> list:
        if not points:
            return [()]
        first, rest = points[0], points[1:]
        out = []
        # choose the other members of the block containing ``first``
        for r in range(len(rest) + 1):
            for others in itertools.combinations(range(len(rest)), r):
                block = (first,) + tuple(rest[i] for i in others)
                # gaps between consecutive block members are partitioned separately
                cuts = [-1] + list(others) + [len(rest)]
                gaps = [rest[cuts[i] + 1 : cuts[i + 1]] for i in range(len(cuts) - 1)]
                parts = [rec(g) for g in gaps]
                for combo in itertools.product(*parts):
                    out.append((block,) + tuple(b for p in combo for b in p))
        return out

    return tuple(tuple(sorted(p)) for p in rec(tuple(range(L))))


def _to_biseries(d: dict, order: int) -> BiSeries:
    return BiSeries({jk: v for jk, v in d.items() if jk[0] + jk[1] <= order}, order)


# -- public operations ---------------------------------------------------------------


def correlator_series(
    word: TraceWord | str,
    P: int = DEFAULT_ORDER,
    t=1,
    connected: bool = False,
    model: PlanarModel | None = None,
) -> BiSeries:
    """``<(1/N) tr word>`` in the planar limit through total order ``P``.

    Odd-length words give the zero series.  With ``connected=True`` the free
    cumulant is returned, i.e. all disconnected products are subtracted.
    """
    check_budget(P)
    if isinstance(word, str):
        word = TraceWord.parse(word)
    model = model or PlanarModel(t)
    if Fraction(t) != model.t:
        raise ValueError("model was built for a different t")
    fn = model.word_cumulant if connected else model.word_moment
    return _to_biseries(fn(word, P), P)


@dataclass(frozen=True)
class FourPoint:
    G: BiSeries
    gamma1: BiSeries
    gamma2: BiSeries


def two_and_four_point(P: int = DEFAULT_ORDER, t=1, model: PlanarModel | None = None) -> FourPoint:
    """``G = <aa>``, ``Gamma1 = <abab>``, ``Gamma2 = <aabb> - G^2``."""
    check_budget(P)
    model = model or PlanarModel(t)
    G = correlator_series("aa", P, t, model=model)
    g1 = correlator_series("abab", P, t, model=model)
    g2 = correlator_series("aabb", P, t, model=model) - G * G
    return FourPoint(G, g1, g2)


def summed_four_point(P: int = DEFAULT_ORDER, t=1, model: PlanarModel | None = None):
    """``F1 = (1/n) sum_ab <(M_a M_b)^2>`` and ``F2 = (1/n) sum_ab <M_a^2 M_b^2>``."""
    check_budget(P)
    model = model or PlanarModel(t)
    both = frozenset("ab")
    out = []
    for text in ("abab", "aabb"):
        s = correlator_series(TraceWord.parse(text, both), P, t, model=model)
        out.append(s.map(lambda c: c.exact_div(_N)))
    return tuple(out)


SIX_LEG_WORDS = ("abcabc", "abcacb", "aabcbc", "abbacc", "aabbcc")


def six_leg_invariants(P: int = DEFAULT_ORDER, t=1, model: PlanarModel | None = None) -> tuple[BiSeries, ...]:
    """Connected six-leg correlators for the five colour patterns, ``a, b, c`` distinct."""
    check_budget(P)
    model = model or PlanarModel(t)
    return tuple(correlator_series(w, P, t, connected=True, model=model) for w in SIX_LEG_WORDS)


def chord_pattern(pairing: Sequence[tuple[int, int]], L: int) -> str:
    """The colour word obtained by giving each chord of a pairing its own colour."""
    word = [None] * L
    for i, (x, y) in enumerate(pairing):
        word[x] = word[y] = string.ascii_lowercase[i]
    return "".join(word)


def perfect_matchings(points: Sequence[int]) -> list[list[tuple[int, int]]]:
    if not points:
        return [[]]
    first, rest = points[0], points[1:]
    out = []
    for i, other in enumerate(rest):
        for m in perfect_matchings(rest[:i] + rest[i + 1 :]):
            out.append([(first, other)] + m)
    return out


def sigma_series(P: int = DEFAULT_ORDER, t=1, model: PlanarModel | None = None) -> BiSeries:
    """1PI two-leg function ``Sigma = t - 1/G``."""
    check_budget(P)
    G = correlator_series("aa", P, t, model=model)
    return BiSeries.constant(ColorPoly([Fraction(t)]), P) - G.inverse()


# -- free energy by enumeration of Wick pairings ------------------------------------


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


# colour variable (0 or 1 of the vertex) carried by each of the four legs
_LEG_COLOUR = {1: (0, 1, 0, 1), 2: (0, 0, 1, 1)}


@dataclass(frozen=True)
class DiagramWeight:
    n_power: int
    multidegree: tuple[int, int]
    prefactor: Fraction


def _count_faces(match: list[int], V: int) -> int:
    """Cycles of ``sigma o alpha``: index loops of the fat graph."""
    H = 4 * V
    seen = [False] * H
    faces = 0
    for h in range(H):
        if seen[h]:
            continue
        faces += 1
        x = h
        while not seen[x]:
            seen[x] = True
            y = match[x]
            x = (y & ~3) | ((y + 1) & 3)
    return faces


def _connected(match: list[int], V: int) -> bool:
    uf = _UnionFind(V)
    comps = V
    for h, o in enumerate(match):
        if uf.union(h >> 2, o >> 2):
            comps -= 1
    return comps == 1


def _planar_vacuum_pairings(V: int, lead: int | None = None):
    """Connected planar pairings of ``4V`` half-edges (``F = V + 2`` faces)."""
    H = 4 * V
    match = [-1] * H

    def rec():
        try:
            h = match.index(-1)
        except ValueError:
            if _count_faces(match, V) == V + 2 and _connected(match, V):
                yield list(match)
            return
        for o in range(h + 1, H):
            if match[o] == -1:
                match[h], match[o] = o, h
                yield from rec()
                match[h] = match[o] = -1

    if lead is None:
        yield from rec()
    else:
        match[0], match[lead] = lead, 0
        yield from rec()


def _vacuum_chunk(V: int, lead: int) -> dict:
    """Sum of ``n^C`` per vertex-type assignment for pairings starting with (0, lead)."""
    out: dict = {}
    for match in _planar_vacuum_pairings(V, lead):
        for types in itertools.product((1, 2), repeat=V):
            uf = _UnionFind(2 * V)
            C = 2 * V
            for h, o in enumerate(match):
                if h < o:
                    a = 2 * (h >> 2) + _LEG_COLOUR[types[h >> 2]][h & 3]
                    b = 2 * (o >> 2) + _LEG_COLOUR[types[o >> 2]][o & 3]
                    if uf.union(a, b):
                        C -= 1
            k1 = types.count(1)
            key = (k1, V - k1, C)
            out[key] = out.get(key, 0) + 1
    return out


def vacuum_diagrams(V: int, threads: int = 1) -> dict[tuple[int, int, int], int]:
    """Counts of labelled connected planar vacuum diagrams by ``(k1, k2, colour loops)``.

    Vertices are labelled and carry an ordered type assignment; the sum
    over the first pairing decision is split into independent chunks and
    reduced in a fixed order.
    """
    if V == 0:
        return {}
    leads = list(range(1, 4 * V))
    if threads > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(threads) as pool:
            chunks = list(pool.map(_vacuum_chunk, [V] * len(leads), leads))
    else:
        chunks = [_vacuum_chunk(V, lead) for lead in leads]
    total: dict = {}
    for chunk in chunks:
        for key, v in chunk.items():
            total[key] = total.get(key, 0) + v
    return total


def free_energy_series(P: int = DEFAULT_ORDER, t=1, threads: int = 1) -> BiSeries:
    """Planar free energy ``lim log Z / N^2`` through total order ``P``.

    Each labelled diagram with ``k1 + k2 = V`` vertices weighs
    ``(g1/4)^k1 (g2/2)^k2 / V! * t^(-2V) * n^C``; summing over ordered type
    assignments reproduces the ``1/(k1! k2!)`` of the exponential.
    """
    check_budget(P)
    t = Fraction(t)
    terms: dict = {}
    for V in range(1, P + 1):
        for (k1, k2, C), count in vacuum_diagrams(V, threads).items():
            w = Fraction(count, 4**k1 * 2**k2 * factorial(V)) / t ** (2 * V)
            coeffs = [0] * C + [w]
            terms[(k1, k2)] = terms.get((k1, k2), 0) + ColorPoly(coeffs)
    return BiSeries(terms, P)


# -- correlators by direct enumeration (small orders) ----------------------------------


@dataclass(frozen=True)
class WickPairing:
    """A complete pairing of the half-edges of one correlator diagram.

    Half-edges ``0 .. L-1`` belong to the trace of the word, in order; the
    four half-edges of internal vertex ``v`` are ``L + 4v .. L + 4v + 3``.
    """

    word: tuple[str, ...]
    types: tuple[int, ...]  # vertex types, 1 or 2
    match: tuple[int, ...]

    @property
    def L(self) -> int:
        return len(self.word)

    def rotate(self, h: int) -> int:
        L = self.L
        if h < L:
            return (h + 1) % L
        v, r = divmod(h - L, 4)
        return L + 4 * v + (r + 1) % 4

    def index_loops(self) -> int:
        seen = set()
        faces = 0
        for h in range(len(self.match)):
            if h in seen:
                continue
            faces += 1
            x = h
            while x not in seen:
                seen.add(x)
                x = self.rotate(self.match[x])
        return faces

    def is_connected(self) -> bool:
        V = len(self.types)
        uf = _UnionFind(V + 1)
        owner = lambda h: 0 if h < self.L else 1 + (h - self.L) // 4
        comps = V + 1
        for h, o in enumerate(self.match):
            if uf.union(owner(h), owner(o)):
                comps -= 1
        return comps == 1

    def colour_loops(self) -> int | None:
        """Free colour loops, or ``None`` if two distinct fixed colours are identified."""
        L, V = self.L, len(self.types)
        fixed = sorted(set(self.word))
        base = len(fixed)

        def var(h):
            if h < L:
                return fixed.index(self.word[h])
            v, r = divmod(h - L, 4)
            return base + 2 * v + _LEG_COLOUR[self.types[v]][r]

        uf = _UnionFind(base + 2 * V)
        for h, o in enumerate(self.match):
            if h < o:
                uf.union(var(h), var(o))
        roots_fixed = {uf.find(i) for i in range(base)}
        if len(roots_fixed) < base:
            return None
        free = {uf.find(i) for i in range(base, base + 2 * V)} - roots_fixed
        return len(free)

    def weight(self) -> DiagramWeight | None:
        """Powers of ``N`` and ``n``; ``None`` unless planar, connected and colour-allowed."""
        V = len(self.types)
        E = len(self.match) // 2
        n_power_N = -1 + V - E + self.index_loops()
        if n_power_N != 0 or not self.is_connected():
            return None
        C = self.colour_loops()
        if C is None:
            return None
        k1 = self.types.count(1)
        pref = Fraction(1, 4**k1 * 2 ** (V - k1) * factorial(V))
        return DiagramWeight(C, (k1, V - k1), pref)


def _all_matchings(H: int):
    match = [-1] * H

    def rec():
        try:
            h = match.index(-1)
        except ValueError:
            yield tuple(match)
            return
        for o in range(h + 1, H):
            if match[o] == -1:
                match[h], match[o] = o, h
                yield from rec()
                match[h] = match[o] = -1

    yield from rec()


def enumerate_correlator(word: Sequence[str], P: int, t=1) -> BiSeries:
    """``<(1/N) tr word>`` by summing every labelled Wick pairing (fixed distinct labels).

    Exponential cost; meant for cross-checking the loop equations at low order.
    """
    check_budget(P, limit=3)
    t = Fraction(t)
    word = tuple(word)
    terms: dict = {}
    for V in range(P + 1):
        H = len(word) + 4 * V
        if H % 2:
            continue
        for types in itertools.product((1, 2), repeat=V):
            for match in _all_matchings(H):
                w = WickPairing(word, types, match).weight()
                if w is None:
                    continue
                E = H // 2
                coeff = ColorPoly([0] * w.n_power + [w.prefactor / t**E])
                terms[w.multidegree] = terms.get(w.multidegree, 0) + coeff
    return BiSeries(terms, P)
