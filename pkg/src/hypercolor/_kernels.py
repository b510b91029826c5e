"""Compiled inner loops for pattern scanning and oracle queries.

Everything here is written nopython-style (numpy arrays, machine ints) and
compiled with numba when available; without numba the same functions run
as plain Python, which is only sensible for tiny inputs.

Conventions shared with the pure-Python layer:
  - edge bitsets are uint64 word arrays, bit r = colex rank r;
  - random words come from the counter-based stream in `tape` (the uint64
    arithmetic here mirrors `tape.tape_word` exactly, parity-tested);
  - a "probe" is one bit test against the edge bitset.
"""

from __future__ import annotations

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dependency in practice
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]
        return lambda f: f


U64_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
U64_M1 = np.uint64(0xBF58476D1CE4E5B9)
U64_M2 = np.uint64(0x94D049BB133111EB)
U64_1 = np.uint64(1)
U64_30 = np.uint64(30)
U64_27 = np.uint64(27)
U64_31 = np.uint64(31)


@njit(cache=True)
def _word(seed, index, n):
    """Word `index` of stream `seed`, in 0..n-1 (splitmix64 finalizer)."""
    z = seed + np.uint64(index) * U64_GOLDEN
    z = (z ^ (z >> U64_30)) * U64_M1
    z = (z ^ (z >> U64_27)) * U64_M2
    z = z ^ (z >> U64_31)
    return np.int64(z % np.uint64(n))


@njit(cache=True)
def _sort_small(a, m):
    """In-place insertion sort of a[:m]."""
    for i in range(1, m):
        x = a[i]
        j = i - 1
        while j >= 0 and a[j] > x:
            a[j + 1] = a[j]
            j -= 1
        a[j + 1] = x


@njit(cache=True)
def _bit(words, r):
    return np.int64((words[r >> 6] >> np.uint64(r & 63)) & U64_1)


@njit(cache=True)
def _succ(sub, m, n):
    """Colex successor of the ascending m-subset sub of 0..n-1, in place."""
    j = 0
    while j < m:
        limit = sub[j + 1] if j < m - 1 else n
        if sub[j] + 1 < limit:
            break
        j += 1
    if j == m:
        return False
    sub[j] += 1
    for i in range(j):
        sub[i] = i
    return True


@njit(cache=True)
def _probe_with(words, comb_tab, k, v, others):
    """Bit for the edge {v} ∪ others, where others is ascending of length k-1."""
    rank = np.int64(0)
    pos = 0
    placed = False
    for t in range(k - 1):
        val = others[t]
        if not placed and v < val:
            rank += comb_tab[v, pos + 1]
            pos += 1
            placed = True
        rank += comb_tab[val, pos + 1]
        pos += 1
    if not placed:
        rank += comb_tab[v, pos + 1]
    return _bit(words, rank)


@njit(cache=True)
def _nonempty(words, comb_tab, k, v, S):
    """(N(v, S \\ {v}) != empty, probes); short-circuits on the first hit."""
    m = 0
    Sf = np.empty(S.shape[0], np.int64)
    for i in range(S.shape[0]):
        if S[i] != v:
            Sf[m] = S[i]
            m += 1
    r = k - 1
    if m < r:
        return False, np.int64(0)
    idx = np.empty(r, np.int64)
    for i in range(r):
        idx[i] = i
    sel = np.empty(r, np.int64)
    probes = np.int64(0)
    while True:
        for i in range(r):
            sel[i] = Sf[idx[i]]
        probes += 1
        if _probe_with(words, comb_tab, k, v, sel):
            return True, probes
        j = 0
        while j < r:
            limit = idx[j + 1] if j < r - 1 else m
            if idx[j] + 1 < limit:
                break
            j += 1
        if j == r:
            return False, probes
        idx[j] += 1
        for i in range(j):
            idx[i] = i


@njit(cache=True)
def _spans(words, comb_tab, sub, k, pat_pos, pat_lrank, memo):
    """First canonical bipartition of sub whose full pattern is present.

    Returns (partition index or -1, probes).  memo caches bit tests per
    local k-subset so overlapping pattern edges are probed once.
    """
    memo[:] = -1
    n_parts = pat_pos.shape[0]
    n_edges = pat_pos.shape[1]
    probes = np.int64(0)
    for p in range(n_parts):
        ok = True
        for e in range(n_edges):
            lr = pat_lrank[p, e]
            b = memo[lr]
            if b < 0:
                rank = np.int64(0)
                for j in range(k):
                    rank += comb_tab[sub[pat_pos[p, e, j]], j + 1]
                b = np.int8(_bit(words, rank))
                probes += 1
                memo[lr] = b
            if b == 0:
                ok = False
                break
        if ok:
            return p, probes
    return -1, probes


@njit(cache=True)
def _scan_copies(
    words, comb_tab, n, k, sub0, pat_pos, pat_lrank, n_local, max_count, out_parts, out_subs
):
    """Scan 2l-subsets in colex order from sub0 to the colex maximum.

    Every spanning (subset, bipartition) pair is a distinct copy; counting
    stops at max_count and the first min(max_count, len(out_parts)) copies
    are recorded.  Returns (count, probes).
    """
    two_l = sub0.shape[0]
    if n < two_l:
        return np.int64(0), np.int64(0)
    memo = np.empty(n_local, np.int8)
    sub = sub0.copy()
    probes = np.int64(0)
    count = np.int64(0)
    cap_store = out_parts.shape[0]
    n_parts = pat_pos.shape[0]
    n_edges = pat_pos.shape[1]
    # a spanning bipartition tolerates at most `allowed` absent k-subsets
    # inside sub; when that bound is tight, counting misses rejects the
    # subset after a few probes (the pass doubles as the memo fill)
    allowed = comb_tab[two_l, k] - n_edges
    screen = allowed <= k
    idx = np.empty(k, np.int64)
    while True:
        memo[:] = -1
        if screen:
            for i in range(k):
                idx[i] = i
            absent = np.int64(0)
            lr = 0
            rejected = False
            while True:
                rank = np.int64(0)
                for j in range(k):
                    rank += comb_tab[sub[idx[j]], j + 1]
                b = np.int8(_bit(words, rank))
                probes += 1
                memo[lr] = b
                lr += 1
                if b == 0:
                    absent += 1
                    if absent > allowed:
                        rejected = True
                        break
                if not _succ(idx, k, two_l):
                    break
            if rejected:
                if not _succ(sub, two_l, n):
                    return count, probes
                continue
        for p in range(n_parts):
            ok = True
            for e in range(n_edges):
                lr = pat_lrank[p, e]
                b = memo[lr]
                if b < 0:
                    rank = np.int64(0)
                    for j in range(k):
                        rank += comb_tab[sub[pat_pos[p, e, j]], j + 1]
                    b = np.int8(_bit(words, rank))
                    probes += 1
                    memo[lr] = b
                if b == 0:
                    ok = False
                    break
            if ok:
                if count < cap_store:
                    out_parts[count] = p
                    for j in range(two_l):
                        out_subs[count, j] = sub[j]
                count += 1
                if count >= max_count:
                    return count, probes
        if not _succ(sub, two_l, n):
            return count, probes


@njit(cache=True)
def _check_pair_condition(words, comb_tab, k, ys, m, A, B):
    """Conditions (ii.1)/(ii.2) given anchor edge already verified.

    Returns (c_for_A, probes): 0 if every y sees A, 1 if every y sees B,
    -1 otherwise.  c_for_A is the color of side A forced by anchoring
    vertex 0 to color 0.
    """
    probes = np.int64(0)
    ok = True
    for j in range(m):
        ne, pr = _nonempty(words, comb_tab, k, ys[j], A)
        probes += pr
        if not ne:
            ok = False
            break
    if ok:
        return np.int64(0), probes
    ok = True
    for j in range(m):
        ne, pr = _nonempty(words, comb_tab, k, ys[j], B)
        probes += pr
        if not ne:
            ok = False
            break
    if ok:
        return np.int64(1), probes
    return np.int64(-1), probes


@njit(cache=True)
def _rank_with(comb_tab, k, v, others):
    """Colex rank of the k-set {v} ∪ others (others ascending, length k-1)."""
    rank = np.int64(0)
    pos = 0
    placed = False
    for t in range(k - 1):
        val = others[t]
        if not placed and v < val:
            rank += comb_tab[v, pos + 1]
            pos += 1
            placed = True
        rank += comb_tab[val, pos + 1]
        pos += 1
    if not placed:
        rank += comb_tab[v, pos + 1]
    return rank


@njit(cache=True)
def _gprobe(words, gmemo, rank):
    """Memoized bit test: (bit, probes_added).

    gmemo is the query's working memory over all possible edge ranks; the
    first test of a rank costs one probe, later tests of the same rank are
    free because the query already knows the answer.
    """
    b = gmemo[rank]
    if b >= 0:
        return np.int64(b), np.int64(0)
    bit = _bit(words, rank)
    gmemo[rank] = np.int8(bit)
    return bit, np.int64(1)


@njit(cache=True)
def _nonempty_g(words, gmemo, comb_tab, k, v, S):
    """Memoized variant of _nonempty; same short-circuit semantics."""
    m = 0
    Sf = np.empty(S.shape[0], np.int64)
    for i in range(S.shape[0]):
        if S[i] != v:
            Sf[m] = S[i]
            m += 1
    r = k - 1
    if m < r:
        return False, np.int64(0)
    idx = np.empty(r, np.int64)
    for i in range(r):
        idx[i] = i
    sel = np.empty(r, np.int64)
    probes = np.int64(0)
    while True:
        for i in range(r):
            sel[i] = Sf[idx[i]]
        bit, pr = _gprobe(words, gmemo, _rank_with(comb_tab, k, v, sel))
        probes += pr
        if bit:
            return True, probes
        j = 0
        while j < r:
            limit = idx[j + 1] if j < r - 1 else m
            if idx[j] + 1 < limit:
                break
            j += 1
        if j == r:
            return False, probes
        idx[j] += 1
        for i in range(j):
            idx[i] = i


@njit(cache=True)
def _spans_g(words, gmemo, comb_tab, sub, k, pat_pos):
    """Memoized variant of _spans (the query memo subsumes the local one).

    When each bipartition's pattern nearly saturates the C(2l,k) local
    k-subsets, a spanning sub tolerates only `allowed` absent edges inside
    it, so counting misses rejects almost every sub after a few probes
    without touching the partition loop.
    """
    two_l = sub.shape[0]
    n_parts = pat_pos.shape[0]
    n_edges = pat_pos.shape[1]
    probes = np.int64(0)
    allowed = comb_tab[two_l, k] - n_edges
    if allowed <= k:
        idx = np.empty(k, np.int64)
        for i in range(k):
            idx[i] = i
        absent = np.int64(0)
        while True:
            rank = np.int64(0)
            for j in range(k):
                rank += comb_tab[sub[idx[j]], j + 1]
            bit, pr = _gprobe(words, gmemo, rank)
            probes += pr
            if bit == 0:
                absent += 1
                if absent > allowed:
                    return -1, probes
            if not _succ(idx, k, two_l):
                break
    for p in range(n_parts):
        ok = True
        for e in range(n_edges):
            rank = np.int64(0)
            for j in range(k):
                rank += comb_tab[sub[pat_pos[p, e, j]], j + 1]
            bit, pr = _gprobe(words, gmemo, rank)
            probes += pr
            if bit == 0:
                ok = False
                break
        if ok:
            return p, probes
    return -1, probes


@njit(cache=True)
def _check_pair_g(words, gmemo, comb_tab, k, ys, m, A, B):
    """Memoized variant of _check_pair_condition."""
    probes = np.int64(0)
    ok = True
    for j in range(m):
        ne, pr = _nonempty_g(words, gmemo, comb_tab, k, ys[j], A)
        probes += pr
        if not ne:
            ok = False
            break
    if ok:
        return np.int64(0), probes
    ok = True
    for j in range(m):
        ne, pr = _nonempty_g(words, gmemo, comb_tab, k, ys[j], B)
        probes += pr
        if not ne:
            ok = False
            break
    if ok:
        return np.int64(1), probes
    return np.int64(-1), probes


@njit(cache=True)
def _try_subset(
    words, gmemo, comb_tab, n, k, ell, parts_a, parts_b, pat_pos,
    sub, A, B, ys, ysort, comp, insub,
):
    """Span check plus anchored-witness orientation for one subset.

    Only the first spanning bipartition is tried.  Returns (cA, probes):
    cA is the color forced on side A by anchoring vertex 0 to color 0, or
    -1 when the subset does not span or no complement witness pins the
    orientation.  On success A and B hold the copy's sides.
    """
    probes = np.int64(0)
    two_l = sub.shape[0]
    p, pr = _spans_g(words, gmemo, comb_tab, sub, k, pat_pos)
    probes += pr
    if p < 0:
        return np.int64(-1), probes
    for j in range(ell):
        A[j] = sub[parts_a[p, j]]
        B[j] = sub[parts_b[p, j]]
    for v in range(n):
        insub[v] = 0
    for j in range(two_l):
        insub[sub[j]] = 1
    m = 0
    for v in range(n):
        if insub[v] == 0:
            comp[m] = v
            m += 1
    r = k - 1
    if m < r:
        return np.int64(-1), probes
    idx = np.empty(r, np.int64)
    for i in range(r):
        idx[i] = i
    while True:
        bad = False
        for i in range(r):
            ys[i] = comp[idx[i]]
            if ys[i] == 0:
                bad = True
        if not bad:
            for i in range(r):
                ysort[i] = ys[i]
            _sort_small(ysort, r)
            bit, pr = _gprobe(words, gmemo, _rank_with(comb_tab, k, 0, ysort))
            probes += pr
            if bit:
                side, pr = _check_pair_g(words, gmemo, comb_tab, k, ys, r, A, B)
                probes += pr
                if side >= 0:
                    return side, probes
        j = 0
        while j < r:
            limit = idx[j + 1] if j < r - 1 else m
            if idx[j] + 1 < limit:
                break
            j += 1
        if j == r:
            return np.int64(-1), probes
        idx[j] += 1
        for i in range(j):
            idx[i] = i


@njit(cache=True)
def _oracle(
    words,
    comb_tab,
    n,
    k,
    ell,
    parts_a,
    parts_b,
    pat_pos,
    u,
    s2cap,
    s3cap,
    seed,
    start_index,
    reuse_copy,
):
    """One oracle query: stage-2 tuple search, stage-3 witness search.

    All bit tests go through a per-query memo, so each possible edge is
    probed at most once per query (the query keeps no memory afterwards).
    Returns (status, color, probes, s2_samples, s3_samples, words_consumed)
    with status 0 = colored via the stages, 1 = fallback required.
    """
    two_l = 2 * ell
    t = two_l + k - 1
    probes = np.int64(0)
    c = np.int64(0)  # words consumed
    buf = np.empty(t, np.int64)
    sub = np.empty(two_l, np.int64)
    ys = np.empty(k - 1, np.int64)
    ysort = np.empty(k - 1, np.int64)
    A = np.empty(ell, np.int64)
    B = np.empty(ell, np.int64)
    gmemo = np.full(comb_tab[n, k], np.int8(-1))
    have_copy = False
    cA = np.int64(-1)
    cB = np.int64(-1)
    s2 = np.int64(0)

    # ---- stage 2, sampling phase
    if n >= t:
        while s2 < s2cap:
            redraw_all = not (reuse_copy and have_copy)
            draw = t if redraw_all else k - 1
            for j in range(draw):
                buf[j] = _word(seed, start_index + c, n)
                c += 1
            dup = False
            for a_ in range(draw):
                for b_ in range(a_):
                    if buf[a_] == buf[b_]:
                        dup = True
            if not redraw_all and not dup:
                for a_ in range(draw):
                    for j in range(ell):
                        if buf[a_] == A[j] or buf[a_] == B[j]:
                            dup = True
            if dup:
                continue  # a repeat costs no probes and is not an inspected tuple
            s2 += 1
            if redraw_all:
                for j in range(k - 1):
                    ys[j] = buf[two_l + j]
            else:
                for j in range(k - 1):
                    ys[j] = buf[j]
            bad = False
            for j in range(k - 1):
                if ys[j] == 0:
                    bad = True
            if bad:
                continue
            # anchor edge (vertex 0, y_1..y_{k-1}) gates the expensive span check
            for j in range(k - 1):
                ysort[j] = ys[j]
            _sort_small(ysort, k - 1)
            bit, pr = _gprobe(words, gmemo, _rank_with(comb_tab, k, 0, ysort))
            probes += pr
            if bit == 0:
                continue
            if redraw_all:
                for j in range(two_l):
                    sub[j] = buf[j]
                _sort_small(sub, two_l)
                p, pr = _spans_g(words, gmemo, comb_tab, sub, k, pat_pos)
                probes += pr
                if p < 0:
                    continue
                for j in range(ell):
                    A[j] = sub[parts_a[p, j]]
                    B[j] = sub[parts_b[p, j]]
                have_copy = True
            side, pr = _check_pair_g(words, gmemo, comb_tab, k, ys, k - 1, A, B)
            probes += pr
            if side == 0:
                cA = 0
                cB = 1
                break
            if side == 1:
                cA = 1
                cB = 0
                break

    # ---- stage 2, deterministic exhaustion sweep
    # Subsets are visited in colex order, factored as (high two_l-1
    # elements, then the minimum): colex on the full subset equals
    # lexicographic on that pair, and screening the high elements alone
    # (their own k-subsets already exceed the absent-edge allowance for
    # almost every choice) skips the whole run over the minimum.
    if cA < 0 and n >= t:
        comp = np.empty(n, np.int64)
        insub = np.zeros(n, np.uint8)
        hi = np.empty(two_l - 1, np.int64)  # high elements minus one
        for j in range(two_l - 1):
            hi[j] = j
        allowed = comb_tab[two_l, k] - pat_pos.shape[1]
        idxh = np.empty(k, np.int64)
        more_hi = True
        while cA < 0 and more_hi:
            rejected = False
            if allowed <= k and two_l - 1 >= k:
                for i in range(k):
                    idxh[i] = i
                absent = np.int64(0)
                while True:
                    rank = np.int64(0)
                    for j in range(k):
                        rank += comb_tab[hi[idxh[j]] + 1, j + 1]
                    bit, pr = _gprobe(words, gmemo, rank)
                    probes += pr
                    if bit == 0:
                        absent += 1
                        if absent > allowed:
                            rejected = True
                            break
                    if not _succ(idxh, k, two_l - 1):
                        break
            if rejected:
                more_hi = _succ(hi, two_l - 1, n - 1)
                continue
            for j in range(two_l - 1):
                sub[j + 1] = hi[j] + 1
            for s0 in range(hi[0] + 1):
                sub[0] = s0
                res, pr = _try_subset(
                    words, gmemo, comb_tab, n, k, ell, parts_a, parts_b,
                    pat_pos, sub, A, B, ys, ysort, comp, insub,
                )
                probes += pr
                if res >= 0:
                    cA = res
                    cB = 1 - res
                    break
            more_hi = _succ(hi, two_l - 1, n - 1)
    if cA < 0:
        return np.int64(1), np.int64(0), probes, s2, np.int64(0), c

    # ---- stage 3, sampling phase
    s3 = np.int64(0)
    colored = np.int64(-1)
    vs = ys  # reuse the buffer
    if n >= k:
        while s3 < s3cap:
            for j in range(k - 1):
                vs[j] = _word(seed, start_index + c, n)
                c += 1
            dup = False
            for a_ in range(k - 1):
                if vs[a_] == u:
                    dup = True
                for b_ in range(a_):
                    if vs[a_] == vs[b_]:
                        dup = True
            if dup:
                continue
            s3 += 1
            for j in range(k - 1):
                ysort[j] = vs[j]
            _sort_small(ysort, k - 1)
            bit, pr = _gprobe(words, gmemo, _rank_with(comb_tab, k, u, ysort))
            probes += pr
            if bit == 0:
                continue
            side, pr = _check_pair_g(words, gmemo, comb_tab, k, vs, k - 1, A, B)
            probes += pr
            if side == 0:
                colored = cA
                break
            if side == 1:
                colored = cB
                break
        # ---- stage 3, deterministic exhaustion sweep
        if colored < 0:
            comp = np.empty(n, np.int64)
            m = 0
            for v in range(n):
                if v != u:
                    comp[m] = v
                    m += 1
            r = k - 1
            if m >= r:
                idx = np.empty(r, np.int64)
                for i in range(r):
                    idx[i] = i
                while True:
                    for i in range(r):
                        vs[i] = comp[idx[i]]
                    bit, pr = _gprobe(words, gmemo, _rank_with(comb_tab, k, u, vs))
                    probes += pr
                    if bit:
                        side, pr = _check_pair_g(words, gmemo, comb_tab, k, vs, r, A, B)
                        probes += pr
                        if side == 0:
                            colored = cA
                            break
                        if side == 1:
                            colored = cB
                            break
                    j = 0
                    while j < r:
                        limit = idx[j + 1] if j < r - 1 else m
                        if idx[j] + 1 < limit:
                            break
                        j += 1
                    if j == r:
                        break
                    idx[j] += 1
                    for i in range(j):
                        idx[i] = i
    if colored < 0:
        return np.int64(1), np.int64(0), probes, s2, s3, c
    return np.int64(0), colored, probes, s2, s3, c
