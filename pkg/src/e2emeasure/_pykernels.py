"""Pure-Python implementations of the hot kernels.

Symbols are small non-negative integers (code points or token ids). Every
function here has a twin with the same signature in ``_ckernels.pyx``.
"""

from __future__ import annotations

from typing import List, Sequence, Tuple


def distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Unit-cost Levenshtein distance, bit-parallel over ``a``."""
    m = len(a)
    if m == 0:
        return len(b)
    if not b:
        return m
    peq: dict = {}
    for i, c in enumerate(a):
        peq[c] = peq.get(c, 0) | (1 << i)
    full = (1 << m) - 1
    top = 1 << (m - 1)
    pv = full
    mv = 0
    score = m
    for c in b:
        eq = peq.get(c, 0)
        xv = eq | mv
        xh = ((((eq & pv) + pv) & full) ^ pv) | eq
        ph = (mv | ~(xh | pv)) & full
        mh = pv & xh
        if ph & top:
            score += 1
        elif mh & top:
            score -= 1
        ph = ((ph << 1) | 1) & full
        mh = (mh << 1) & full
        pv = (mh | ~(xv | ph)) & full
        mv = ph & xv
    return score


def prefix_distances(
    g: Sequence[int], stream: Sequence[int], start: int, ends: Sequence[int], limit
) -> List[int]:
    """Distances between ``g`` and ``stream[start:e]`` for ascending ``ends``.

    ``limit`` is one bound or one bound per end. The scan stops once no
    remaining end can reach its bound; the returned list is then shorter
    than ``ends``. Returned values may exceed their bound.
    """
    out: List[int] = []
    if not ends:
        return out
    if isinstance(limit, int):
        reach = [limit] * len(ends)
    else:
        reach = list(limit)
        for t in range(len(reach) - 2, -1, -1):
            if reach[t + 1] > reach[t]:
                reach[t] = reach[t + 1]
    k = len(g)
    col = list(range(k + 1))
    pos = start
    for t, e in enumerate(ends):
        while pos < e:
            c = stream[pos]
            prev_diag = col[0]
            col[0] = prev_diag + 1
            best = col[0]
            for j in range(1, k + 1):
                up = col[j]
                v = prev_diag + (g[j - 1] != c)
                if up + 1 < v:
                    v = up + 1
                if col[j - 1] + 1 < v:
                    v = col[j - 1] + 1
                col[j] = v
                prev_diag = up
                if v < best:
                    best = v
            pos += 1
            if best > reach[t]:
                return out
        out.append(col[k])
    return out


def edit_counts(a: Sequence[int], b: Sequence[int]) -> Tuple[int, int, int, int]:
    """(ins, dele, sub, cor) of one optimal script; ties prefer match/sub, then delete."""
    n, m = len(a), len(b)
    table = [list(range(m + 1))]
    for i in range(1, n + 1):
        prev = table[-1]
        row = [i] * (m + 1)
        ai = a[i - 1]
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (ai != b[j - 1]), prev[j] + 1, row[j - 1] + 1)
        table.append(row)
    ins = dele = sub = cor = 0
    i, j = n, m
    while i or j:
        here = table[i][j]
        if i and j and table[i - 1][j - 1] + (a[i - 1] != b[j - 1]) == here:
            if a[i - 1] == b[j - 1]:
                cor += 1
            else:
                sub += 1
            i, j = i - 1, j - 1
        elif i and table[i - 1][j] + 1 == here:
            dele += 1
            i -= 1
        else:
            ins += 1
            j -= 1
    return ins, dele, sub, cor


def best_substring_distance(pattern: Sequence[int], text: Sequence[int]) -> int:
    """Smallest distance between ``pattern`` and any substring of ``text``."""
    m = len(pattern)
    if m == 0:
        return 0
    peq: dict = {}
    for i, c in enumerate(pattern):
        peq[c] = peq.get(c, 0) | (1 << i)
    full = (1 << m) - 1
    top = 1 << (m - 1)
    pv, mv, score = full, 0, m
    best = m
    for c in text:
        eq = peq.get(c, 0)
        xv = eq | mv
        xh = ((((eq & pv) + pv) & full) ^ pv) | eq
        ph = (mv | ~(xh | pv)) & full
        mh = pv & xh
        if ph & top:
            score += 1
        elif mh & top:
            score -= 1
            if score < best:
                best = score
                if not best:
                    return 0
        # A substring may start anywhere: no carry into the top row.
        ph = (ph << 1) & full
        mh = (mh << 1) & full
        pv = (mh | ~(xv | ph)) & full
        mv = ph & xv
    return best


def best_substring_distances(patterns: Sequence[Sequence[int]], text: Sequence[int]) -> List[int]:
    return [best_substring_distance(p, text) for p in patterns]


def distance_matrix(hyps: Sequence[Sequence[int]], gts: Sequence[Sequence[int]]) -> List[List[int]]:
    return [[distance(h, g) for g in gts] for h in hyps]
