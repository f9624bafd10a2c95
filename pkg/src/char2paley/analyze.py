"""Codegrees, Kloosterman sums, and the jumbledness audit.

Everything here is exact: counts are ints, character sums are ints, and
the jumbledness inequality |e(H) - C(h,2)/2| <= q^(3/4) h is decided by
comparing fourth powers, since q^(3/4) is irrational when k = 2 mod 4.
Writing d = |2 e(H) - C(h,2)| (twice the deviation), the test is

    d^4 <= 16 q^3 h^4

and the reported worst ratio is the exact rational d^4 / (16 q^3 h^4),
the fourth power of deviation/bound.

The codegree of a pair against y = INF closes in terms of a Kloosterman
sum: with b = x^2 + x + a and psi(z) = (-1)^tr(z),

    K(b) = sum over nonzero z of psi(z + b/z),
    codegree(x, INF) = q/4 - eps + (K(b) + 1)/4,

and a general pair reduces to that case by rotating y to INF along the
circulant labeling.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb, isqrt

from .construct import CirculantLabeling, OutOfScopeError, ParamA, PaleyLikeGraph, circulant_labeling
from .gf2k import FieldCtx
from .mobius import INF, vertex_index

EXHAUSTIVE_SUBSET_CAP = 17  # largest order for the 2^n induced-subgraph sweep


@dataclass(frozen=True)
class CodegreePair:
    x: object
    y: object
    epsilon: int  # 1 if the pair is an edge
    ell: int      # number of common neighbours


@dataclass(frozen=True)
class KloostermanValue:
    b: int
    value: int


def codegree_direct(g: PaleyLikeGraph, x, y) -> CodegreePair:
    """Count common neighbours straight off the bitset rows."""
    i = vertex_index(g.ctx, x)
    j = vertex_index(g.ctx, y)
    if i == j:
        raise ValueError("codegree is undefined on equal points")
    ell = (g.rows[i] & g.rows[j]).bit_count()
    eps = g.rows[i] >> j & 1
    return CodegreePair(x, y, eps, ell)


def _kloosterman_sum(ctx: FieldCtx, b: int) -> int:
    ctx._ensure_tables()
    exp2 = ctx._exp2
    log = ctx._log
    tr = ctx._trace
    q1 = ctx.q - 1
    lb = log[b] + q1
    # psi(z + b/z) = 1 - 2 tr(z ^ b/z)
    s = 0
    for z in range(1, ctx.q):
        s += tr[z ^ exp2[lb - log[z]]]
    return q1 - 2 * s


def kloosterman(ctx: FieldCtx, b: int) -> KloostermanValue:
    """Exact Kloosterman sum K(b) over the nonzero elements; b must be nonzero."""
    ctx.check_elem(b)
    if b == 0:
        raise ValueError("K(0) is out of scope: codegree parameters b = x^2+x+a "
                         "always have trace 1, hence are nonzero")
    return KloostermanValue(b, _kloosterman_sum(ctx, b))


def kloosterman_sweep(ctx: FieldCtx) -> list[int]:
    """K(b) for every nonzero b, as a list indexed by b (index 0 unused)."""
    out = [0] * ctx.q
    for b in range(1, ctx.q):
        out[b] = _kloosterman_sum(ctx, b)
    return out


def weil_bound_holds(ctx: FieldCtx, values: list[int] | None = None) -> tuple[bool, int, int]:
    """Check |K(b)| <= 2 sqrt(q) for all nonzero b, exactly (K^2 <= 4q).

    Returns (ok, argmax b, max |K|).
    """
    if values is None:
        values = kloosterman_sweep(ctx)
    worst_b, worst = 1, 0
    for b in range(1, ctx.q):
        if abs(values[b]) > worst:
            worst_b, worst = b, abs(values[b])
    return worst * worst <= 4 * ctx.q, worst_b, worst


def codegree_formula(ctx: FieldCtx, a: ParamA, x, y,
                     labeling: CirculantLabeling | None = None,
                     kloo: list[int] | None = None) -> int:
    """Codegree of (x, y) via the Kloosterman identity, no matrix needed.

    Rotates y to INF along the circulant labeling (so `a` must generate a
    full orbit), then evaluates q/4 - eps + (K(x'^2 + x' + a) + 1)/4 at
    the rotated x'.  Optional precomputed labeling and K table make the
    per-pair cost O(1).
    """
    if ctx.k % 2:
        raise ValueError("the codegree formula is for graphs (even k)")
    if labeling is None:
        labeling = circulant_labeling(ctx, a)
    i = labeling.pos[x]
    j = labeling.pos[y]
    if i == j:
        raise ValueError("codegree is undefined on equal points")
    n = ctx.q + 1
    xr = labeling.vertices[(i - j) % n]  # alpha^(-j) image of x; finite
    b = ctx.sqr(xr) ^ xr ^ a.value
    k_val = kloo[b] if kloo is not None else _kloosterman_sum(ctx, b)
    eps = 1 if ctx.trace(xr) == 0 else 0
    num = k_val + 1
    if num % 4 or ctx.q % 4:
        raise AssertionError(f"non-integral codegree from K({b:#x}) = {k_val}")
    return ctx.q // 4 - eps + num // 4


@dataclass(frozen=True)
class CodegreeSpectrum:
    counts: dict                 # (epsilon, ell) -> number of pairs
    max_ell: int
    bound: int                   # q/4 + sqrt(q)/2, an exact int for even k
    within_bound: bool
    max_conference_deviation: int  # max |ell - (q/4 - eps)|
    pairs: int


def spectrum_counts(rows, n: int) -> dict:
    """(epsilon, ell) -> pair count over all unordered pairs of rows."""
    counts: dict[tuple[int, int], int] = {}
    for i in range(n):
        ri = rows[i]
        for j in range(i + 1, n):
            key = (ri >> j & 1, (ri & rows[j]).bit_count())
            counts[key] = counts.get(key, 0) + 1
    return counts


def codegree_spectrum(g: PaleyLikeGraph) -> CodegreeSpectrum:
    """Exact histogram of (epsilon, ell) over all unordered pairs."""
    q = g.ctx.q
    counts = spectrum_counts(g.rows, g.n)
    max_ell = max(ell for _, ell in counts)
    bound = q // 4 + isqrt(q) // 2
    ideal = q // 4
    dev = max(abs(ell - (ideal - eps)) for eps, ell in counts)
    return CodegreeSpectrum(
        counts=dict(sorted(counts.items())),
        max_ell=max_ell,
        bound=bound,
        within_bound=max_ell <= bound,
        max_conference_deviation=dev,
        pairs=comb(g.n, 2),
    )


@dataclass(frozen=True)
class JumblednessAudit:
    mode: str                  # "exhaustive" or "sampled"
    samples: int               # number of subsets tested
    seed: int | None           # None in exhaustive mode
    worst_dev2: int            # d = |2 e(H) - C(h,2)| at the worst subset
    worst_size: int            # h there
    worst_mask: int            # the subset itself, as a vertex bitmask
    worst_ratio_pow4: Fraction  # (deviation/bound)^4, exact
    passed: bool

    @property
    def worst_ratio(self) -> float:
        """Float view of deviation/bound at the worst subset (display only)."""
        return float(self.worst_ratio_pow4) ** 0.25


def _audit_from_worst(g, mode, samples, seed, d, h, mask) -> JumblednessAudit:
    q = g.ctx.q
    if h == 0:
        ratio4 = Fraction(0)
    else:
        ratio4 = Fraction(d ** 4, 16 * q ** 3 * h ** 4)
    return JumblednessAudit(mode, samples, seed, d, h, mask, ratio4, ratio4 <= 1)


def _subset_edges2(rows, mask) -> int:
    """Twice the edge count of the induced subgraph, by 64-bit chunks."""
    e2 = 0
    m = mask
    off = 0
    while m:
        w = m & 0xFFFFFFFFFFFFFFFF
        while w:
            low = w & -w
            e2 += (rows[off + low.bit_length() - 1] & mask).bit_count()
            w ^= low
        m >>= 64
        off += 64
    return e2


def jumbledness_audit(g: PaleyLikeGraph, mode: str = "sampled",
                      samples: int = 100_000, seed: int = 0) -> JumblednessAudit:
    """Audit |e(H) - C(h,2)/2| <= q^(3/4) h over induced subgraphs.

    Exhaustive mode walks all 2^n subsets in Gray-code order (order
    capped at 17); sampled mode draws uniform subsets from a seeded RNG.
    The worst subset is the one maximizing deviation/size, which orders
    identically to the reported fourth-power ratio.
    """
    rows = g.rows
    n = g.n
    worst_d, worst_h, worst_mask = 0, 1, 0
    if mode == "exhaustive":
        if n > EXHAUSTIVE_SUBSET_CAP:
            raise OutOfScopeError(
                f"exhaustive subset sweep capped at order {EXHAUSTIVE_SUBSET_CAP}, got {n}")
        total = 1 << n
        mask = 0
        e2 = 0  # twice e(H), maintained incrementally
        h = 0
        for i in range(1, total):
            bit = 1 << ((i & -i).bit_length() - 1)
            v = bit.bit_length() - 1
            if mask & bit:
                mask ^= bit
                h -= 1
                e2 -= 2 * (rows[v] & mask).bit_count()
            else:
                mask ^= bit
                h += 1
                e2 += 2 * (rows[v] & mask).bit_count()
            if h:
                d = abs(e2 - comb(h, 2))
                if d * worst_h > worst_d * h:
                    worst_d, worst_h, worst_mask = d, h, mask
        return _audit_from_worst(g, "exhaustive", total, None, worst_d, worst_h, worst_mask)
    if mode != "sampled":
        raise ValueError(f"unknown audit mode {mode!r}")
    rng = random.Random(seed)
    for _ in range(samples):
        mask = rng.getrandbits(n)
        h = mask.bit_count()
        if h == 0:
            continue
        d = abs(_subset_edges2(rows, mask) - comb(h, 2))
        if d * worst_h > worst_d * h:
            worst_d, worst_h, worst_mask = d, h, mask
    return _audit_from_worst(g, "sampled", samples, seed, worst_d, worst_h, worst_mask)
