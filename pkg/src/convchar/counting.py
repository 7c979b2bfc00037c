"""Exact counts of convex characters with a minimum block size.

All counts are exact Python ints; the closed forms run on the integer
Fibonacci recurrence, never on floats.  Floating point shows up only in the
growth-rate root finding and in the explicitly guarded float cross-checks.

The core dynamic program roots the tree at its smallest taxon and keeps, per
directed edge, one counter for partial solutions where the edge is cut (all
taxa below already sit in finished blocks of size >= k) and counters
j = 1..k for solutions where exactly one unfinished block crosses the edge
with j taxa below it, j saturating at k.  Children combine by convolution
capped at k, which is sound because only "at least k" ever matters.
Total work is O(n * k^2) big-int operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .trees import Tree

PHI = (1 + math.sqrt(5)) / 2

_MEMO: dict[tuple[str, int], int] = {}
_CATERPILLAR: dict[int, list[int]] = {}


def clear_count_cache() -> None:
    _MEMO.clear()


def fibonacci(m: int) -> int:
    """F(0)=0, F(1)=F(2)=1, exact."""
    if m < 0:
        raise ValueError("m must be non-negative")
    a, b = 0, 1
    for _ in range(m):
        a, b = b, a + b
    return a


def fibonacci_float_check(m: int) -> int:
    """Redundant float evaluation floor(phi^m / sqrt(5) + 1/2).

    Valid only while the value fits a double exactly (m <= 70); the integer
    recurrence is the authoritative path.
    """
    if not 0 <= m <= 70:
        raise ValueError("float cross-check only trusted for 0 <= m <= 70")
    return math.floor(PHI ** m / math.sqrt(5) + 0.5)


def count_closed_k1(n: int) -> int:
    """Convex characters on any n-taxon tree (topology-free): F(2n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return fibonacci(2 * n - 1)


def count_closed_k2(n: int) -> int:
    """Convex characters with every block of size >= 2: F(n-1)."""
    if n < 1:
        raise ValueError("n must be positive")
    return fibonacci(n - 1)


def _dp_tables(tree: Tree, k: int) -> tuple[list[int], list[list[int]]]:
    """Per-vertex DP vectors for the edge above each vertex.

    Returns (cut, open) where cut[v] counts solutions with the edge cut and
    open[v][j] (1 <= j <= k, saturating) counts solutions whose crossing
    block holds j taxa below the edge.  Shared with the enumeration
    backtracker so listing explores no dead branches.
    """
    rd = tree._rooting()
    n = tree.n
    V = tree.num_vertices()
    cut = [0] * V
    opn: list[list[int]] = [[]] * V
    leaf_cut = 1 if k == 1 else 0
    for v in rd.postorder:
        if v == 0:
            continue
        if v < n:
            vec = [0] * (k + 1)
            vec[1] = 1
            cut[v] = leaf_cut
            opn[v] = vec
        else:
            f, g = rd.children[v]
            cf, cg = cut[f], cut[g]
            of, og = opn[f], opn[g]
            vec = [0] * (k + 1)
            if cg:
                for j in range(1, k + 1):
                    if of[j]:
                        vec[j] += of[j] * cg
            if cf:
                for j in range(1, k + 1):
                    if og[j]:
                        vec[j] += og[j] * cf
            cc = cf * cg
            for j1 in range(1, k + 1):
                x = of[j1]
                if not x:
                    continue
                for j2 in range(1, k + 1):
                    y = og[j2]
                    if not y:
                        continue
                    s = j1 + j2
                    if s >= k:
                        vec[k] += x * y
                        cc += x * y
                    else:
                        vec[s] += x * y
            cut[v] = cc
            opn[v] = vec
    return cut, opn


def count_convex(tree: Tree, k: int = 1) -> int:
    """Number of convex characters of ``tree`` whose blocks all have >= k
    taxa.

    Results are memoized per (canonical Newick, k); the cache is shared,
    insert-only and idempotent, so concurrent readers are safe.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    n = tree.n
    if n < k:
        return 0
    if n == 1:
        return 1
    key = (tree.canonical_newick(), k)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    cut, opn = _dp_tables(tree, k)
    c0 = tree._rooting().children[0][0]
    total = cut[c0] if k == 1 else 0
    total += sum(opn[c0][max(1, k - 1):])
    _MEMO[key] = total
    return total


def caterpillar_count(n: int, k: int) -> int:
    """Count for the n-taxon caterpillar via the linear recurrence
    c(n) = c(n-1) + c(n-k), with c(n)=0 for n<k and 1 for k<=n<2k.

    This is the maximum over all n-taxon trees.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < 0:
        raise ValueError("n must be non-negative")
    seq = _CATERPILLAR.setdefault(k, [])
    while len(seq) <= n:
        m = len(seq)
        if m < k:
            seq.append(0)
        elif m < 2 * k:
            seq.append(1)
        else:
            seq.append(seq[m - 1] + seq[m - k])
    return seq[n]


def fully_loaded_count(n: int, k: int) -> int:
    """Count shared by every fully k-loaded tree on n taxa:
    F(ceil(n/(k-1)) - 1).

    This is the minimum over all n-taxon trees.
    """
    if k < 2:
        raise ValueError("k must be at least 2")
    if n < k:
        raise ValueError("fully loaded count needs n >= k")
    return count_closed_k2(-(-n // (k - 1)))


@dataclass(frozen=True)
class GrowthRate:
    """Exponential growth rates of the extremal counts for one k.

    ``max_rate`` is the positive real root of x^k - x^(k-1) - 1 (caterpillar
    growth); ``min_rate`` is phi^(1/(k-1)) (fully loaded growth).  For k = 1
    both rates are phi^2 and the residual is 0 by definition, since the
    characteristic polynomial belongs to the caterpillar recurrence for
    k >= 2 only.
    """

    k: int
    min_rate: float
    max_rate: float
    residual: float


def _bisect_root(poly, lo: float, hi: float) -> float:
    flo = poly(lo)
    for _ in range(200):
        mid = (lo + hi) / 2
        fmid = poly(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0) == (flo < 0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return (lo + hi) / 2


def growth_rate(k: int) -> GrowthRate:
    if k < 1:
        raise ValueError("k must be at least 1")
    if k == 1:
        r = PHI * PHI
        return GrowthRate(1, r, r, 0.0)
    alpha = _bisect_root(lambda x: x ** k - x ** (k - 1) - 1, 1.0, 2.0)
    residual = abs(alpha ** k - alpha ** (k - 1) - 1)
    return GrowthRate(k, PHI ** (1.0 / (k - 1)), alpha, residual)


def _round3(x: float) -> str:
    return str(Decimal(repr(x)).quantize(Decimal("0.001"), rounding=ROUND_HALF_UP))


def rate_table(kmax: int) -> list[GrowthRate]:
    if kmax < 1:
        raise ValueError("kmax must be at least 1")
    return [growth_rate(k) for k in range(1, kmax + 1)]


def rate_table_tsv(kmax: int) -> str:
    """TSV rows ``k<TAB>min_rate<TAB>max_rate``, three decimals, half-up."""
    return "\n".join(
        f"{r.k}\t{_round3(r.min_rate)}\t{_round3(r.max_rate)}"
        for r in rate_table(kmax)
    )


_K3_CLOSED: tuple[float, float] | None = None


def _k3_closed_constants() -> tuple[float, float]:
    """(alpha, c) for the size-3 caterpillar closed form c * alpha^n.

    alpha is the real root of x^3 - x^2 - 1; c is the real root of
    31x^3 - 31x^2 + 9x - 1 divided by alpha^3, which rebases the standard
    recurrence constant to taxon counts.
    """
    global _K3_CLOSED
    if _K3_CLOSED is None:
        alpha = growth_rate(3).max_rate
        num = _bisect_root(lambda x: 31 * x ** 3 - 31 * x ** 2 + 9 * x - 1, 0.0, 1.0)
        _K3_CLOSED = (alpha, num / alpha ** 3)
    return _K3_CLOSED


def caterpillar_closed_k3(n: int) -> int:
    """floor(c * alpha^n + 1/2) cross-check of caterpillar_count(n, 3).

    Double precision keeps the floor exact well past n = 60; refuse beyond.
    """
    if not 0 <= n <= 60:
        raise ValueError("closed form trusted for 0 <= n <= 60 only")
    alpha, c = _k3_closed_constants()
    return math.floor(c * alpha ** n + 0.5)


def split_recurrence_holds(tree: Tree, k: int) -> bool:
    """Check the deletion identity at a split with a side of exactly k taxa.

    For a split A|B with |A| = k and any x in A, the count equals the count
    after deleting A plus the count after deleting x.  Raises if the tree
    has no size-k side.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    block = None
    for sp in tree.splits():
        if len(sp.side_a) == k:
            block = sp.side_a
            break
        if len(sp.side_b) == k:
            block = sp.side_b
            break
    if block is None:
        raise ValueError(f"tree has no split with a side of size {k}")
    x = min(block)
    lhs = count_convex(tree, k)
    rhs = count_convex(tree.delete(block), k) + count_convex(tree.delete({x}), k)
    return lhs == rhs
