"""Compiled inner loops: counter-based sampling, subset DPs, census, Monte Carlo.

All vertex sets are uint64 bitmasks.  Subset-indexed tables use the mask
value as the array index, so the exact deciders are limited to small n.
"""

from __future__ import annotations

import numpy as np
from numba import njit

U0 = np.uint64(0)
U1 = np.uint64(1)
ALL = np.uint64(0xFFFFFFFFFFFFFFFF)
_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_GOLD = np.uint64(0x9E3779B97F4A7C15)
_C1 = np.uint64(0xBF58476D1CE4E5B9)
_C2 = np.uint64(0x94D049BB133111EB)
_S1 = np.uint64(1)
_S2 = np.uint64(2)
_S4 = np.uint64(4)
_S11 = np.uint64(11)
_S27 = np.uint64(27)
_S30 = np.uint64(30)
_S31 = np.uint64(31)
_S56 = np.uint64(56)
_INV53 = 1.0 / 9007199254740992.0

# stream tags keep the different random uses of one seed apart
TAG_GNP = 1
TAG_LINK = 2
TAG_PROCESS = 3
TAG_PICK = 4
TAG_FORGET = 5

# census tally slots
C_TOTAL = 0
C_EVEN = 1
C_EVEN_DECOMP = 2
C_DEGEN = 3
C_NONDEGEN = 4
C_K4FREE_EVEN = 5
C_K4FREE_EVEN_NONDECOMP = 6
C_DEGEN_EVEN_NONDECOMP = 7
C_NONDEGEN_NOT_ALL_ODD = 8
C_GREEDY_INCOMPLETE = 9
N_CENSUS = 10


@njit(cache=True, inline="always")
def popcount(x):
    x = x - ((x >> _S1) & _M1)
    x = (x & _M2) + ((x >> _S2) & _M2)
    x = (x + (x >> _S4)) & _M4
    return np.int64((x * _H01) >> _S56)


@njit(cache=True, inline="always")
def lowbit_index(x):
    return popcount((x & (~x + U1)) - U1)


@njit(cache=True, inline="always")
def low_mask(k):
    if k >= 64:
        return ALL
    return (U1 << np.uint64(k)) - U1


@njit(cache=True, inline="always")
def _mix(z):
    z = (z ^ (z >> _S30)) * _C1
    z = (z ^ (z >> _S27)) * _C2
    return z ^ (z >> _S31)


@njit(cache=True)
def key_hash(seed, tag, stream, counter, index):
    h = _mix(np.uint64(seed) + _GOLD)
    h = _mix(h ^ (np.uint64(tag) + _GOLD))
    h = _mix(h ^ (np.uint64(stream) + _GOLD))
    h = _mix(h ^ (np.uint64(counter) + _GOLD))
    return _mix(h ^ (np.uint64(index) + _GOLD))


@njit(cache=True, inline="always")
def uniform01(h):
    return np.float64(h >> _S11) * _INV53


# ---------------------------------------------------------------- sampling


@njit(cache=True)
def gnp_rows(n, p, seed, tag, stream, counter, rows):
    """Fill ``rows`` with G(n, p); pair (i, j), i < j, uses index j(j-1)/2 + i."""
    for v in range(n):
        rows[v] = U0
    edges = 0
    k = 0
    for j in range(1, n):
        for i in range(j):
            if uniform01(key_hash(seed, tag, stream, counter, k)) < p:
                rows[i] |= U1 << np.uint64(j)
                rows[j] |= U1 << np.uint64(i)
                edges += 1
            k += 1
    return edges


@njit(cache=True)
def gnp_even_rows(n, p, seed, tag, stream, rows, max_attempts):
    """Rejection-sample G(n, p) until the edge count is even; returns attempts used."""
    for attempt in range(max_attempts):
        e = gnp_rows(n, p, seed, tag, stream, attempt, rows)
        if e % 2 == 0:
            return attempt + 1
    return -1


@njit(cache=True)
def edge_count(rows, n):
    t = 0
    for v in range(n):
        t += popcount(rows[v])
    return t // 2


@njit(cache=True)
def linked_pair_rows(n, s, parity, seed, stream, g_rows, h_rows, max_attempts):
    """G ~ G(n, 1/2); H agrees with G on the first s labels and is redrawn elsewhere.

    With ``parity`` the redraw is repeated until e(H) and e(G) agree mod 2.
    Returns the number of redraws used, or -1 when none matched.
    """
    eg = gnp_rows(n, 0.5, seed, TAG_LINK, stream, 0, g_rows)
    for attempt in range(max_attempts):
        for v in range(n):
            h_rows[v] = U0
        eh = 0
        k = 0
        for j in range(1, n):
            for i in range(j):
                if j < s:
                    bit = (g_rows[i] >> np.uint64(j)) & U1
                else:
                    bit = U1 if uniform01(key_hash(seed, TAG_LINK, stream, attempt + 1, k)) < 0.5 else U0
                if bit:
                    h_rows[i] |= U1 << np.uint64(j)
                    h_rows[j] |= U1 << np.uint64(i)
                    eh += 1
                k += 1
        if not parity or (eh - eg) % 2 == 0:
            return attempt + 1
    return -1


# ---------------------------------------------------------------- even-degeneracy


@njit(cache=True)
def greedy_stuck(rows, n):
    """Smallest-label even-degree removal; 0 on success, else the stuck set."""
    w = low_mask(n)
    left = n
    while left > 2:
        found = False
        for v in range(n):
            if (w >> np.uint64(v)) & U1 and popcount(rows[v] & w) % 2 == 0:
                w &= ~(U1 << np.uint64(v))
                left -= 1
                found = True
                break
        if not found:
            return w
    return U0


@njit(cache=True)
def degenerate_search(rows, n, bad, touched, order):
    """Exact even-degeneracy by DFS over remaining sets with a failure memo.

    ``bad`` is a 2^n byte table that must be all-zero on entry and is left
    all-zero on exit.  On success ``order`` holds a valid ordering.
    """
    stack_w = np.empty(n + 1, dtype=np.uint64)
    next_v = np.empty(n + 1, dtype=np.int64)
    chosen = np.empty(n + 1, dtype=np.int64)
    ntouched = 0
    overflow = False
    cap = touched.shape[0]
    depth = 0
    stack_w[0] = low_mask(n)
    next_v[0] = 0
    found = False
    while depth >= 0:
        w = stack_w[depth]
        if popcount(w) <= 2:
            found = True
            break
        v = next_v[depth]
        advanced = False
        while v < n:
            if (w >> np.uint64(v)) & U1 and popcount(rows[v] & w) % 2 == 0:
                child = w & ~(U1 << np.uint64(v))
                if bad[child] == 0:
                    chosen[depth] = v
                    next_v[depth] = v + 1
                    depth += 1
                    stack_w[depth] = child
                    next_v[depth] = 0
                    advanced = True
                    break
            v += 1
        if not advanced:
            bad[w] = 1
            if ntouched < cap:
                touched[ntouched] = np.int64(w)
                ntouched += 1
            else:
                overflow = True
            depth -= 1
    if found:
        for d in range(depth):
            order[d] = chosen[d]
        w = stack_w[depth]
        k = depth
        for v in range(n):
            if (w >> np.uint64(v)) & U1:
                order[k] = v
                k += 1
    if overflow:
        bad[:] = 0
    else:
        for i in range(ntouched):
            bad[touched[i]] = 0
    return found


@njit(cache=True)
def is_degenerate(rows, n, bad, touched, order):
    if greedy_stuck(rows, n) == U0:
        return True, True
    return degenerate_search(rows, n, bad, touched, order), False


# ---------------------------------------------------------------- even-decomposability


@njit(cache=True)
def decomp_tables(rows, n, indep, par):
    """indep[S]: S independent; par[S]: e(G[S]) mod 2, for every subset S."""
    indep[0] = 1
    par[0] = 0
    size = 1 << n
    for s in range(1, size):
        su = np.uint64(s)
        low = su & (~su + U1)
        v = lowbit_index(su)
        rest = su ^ low
        hit = rows[v] & rest
        indep[s] = 1 if indep[rest] == 1 and hit == U0 else 0
        par[s] = par[rest] ^ np.uint8(popcount(hit) & 1)


@njit(cache=True)
def decomp_search(n, indep, par, memo, choice):
    """Top-down subset DP for even-decomposability.

    memo: 0 unknown, 1 good, 2 bad; must be all-zero on entry.  For good sets
    choice[W] is the independent set removed first.  Submasks of W are tried
    in decreasing order.
    """
    full = (1 << n) - 1
    if par[full]:
        return False
    memo[0] = 1
    if full == 0:
        return True
    stack_w = np.empty(n + 2, dtype=np.int64)
    stack_s = np.empty(n + 2, dtype=np.int64)
    depth = 0
    stack_w[0] = full
    stack_s[0] = full
    while True:
        w = stack_w[depth]
        s = stack_s[depth]
        descended = False
        while s != 0:
            r = w ^ s
            if indep[s] and par[r] == 0:
                m = memo[r]
                if m == 1:
                    break
                if m == 0:
                    stack_s[depth] = s
                    depth += 1
                    stack_w[depth] = r
                    stack_s[depth] = r
                    descended = True
                    break
            s = (s - 1) & w
        if descended:
            continue
        if s != 0:
            memo[w] = 1
            choice[w] = s
        else:
            memo[w] = 2
        # unwind: propagate success, or resume the parent's submask scan
        while True:
            if depth == 0:
                return memo[full] == 1
            depth -= 1
            w = stack_w[depth]
            s = stack_s[depth]
            if memo[w ^ s] == 1:
                memo[w] = 1
                choice[w] = s
                continue
            stack_s[depth] = (s - 1) & w
            break


@njit(cache=True)
def replay_ok(rows, n, steps, nsteps):
    """Independent replay of a removal sequence from the full vertex set."""
    rem = low_mask(n)
    if edge_count(rows, n) % 2:
        return False
    for i in range(nsteps):
        s = np.uint64(steps[i])
        if s == U0 or s & ~rem:
            return False
        cross = 0
        x = s
        while x:
            v = lowbit_index(x)
            x &= x - U1
            if rows[v] & s:
                return False
            cross += popcount(rows[v] & rem)
        if cross % 2:
            return False
        rem &= ~s
    return rem == U0


@njit(cache=True)
def extract_steps(n, choice, steps):
    w = (1 << n) - 1
    k = 0
    while w:
        s = choice[w]
        steps[k] = s
        k += 1
        w ^= s
    return k


@njit(cache=True)
def decomposable_verified(rows, n, indep, par, memo, choice, steps):
    """(decomposable, witness replays cleanly); memo is reset before returning."""
    decomp_tables(rows, n, indep, par)
    memo[: 1 << n] = 0
    ok = decomp_search(n, indep, par, memo, choice)
    verified = True
    if ok:
        k = extract_steps(n, choice, steps)
        verified = replay_ok(rows, n, steps, k)
    return ok, verified


# ---------------------------------------------------------------- census


@njit(cache=True)
def _rows_from_index(n, g, rows):
    for v in range(n):
        rows[v] = U0
    k = 0
    gu = np.uint64(g)
    for j in range(1, n):
        for i in range(j):
            if (gu >> np.uint64(k)) & U1:
                rows[i] |= U1 << np.uint64(j)
                rows[j] |= U1 << np.uint64(i)
            k += 1


@njit(cache=True)
def _has_k4(rows, n):
    for u in range(n):
        for v in range(u + 1, n):
            if (rows[u] >> np.uint64(v)) & U1:
                common = rows[u] & rows[v]
                x = common
                while x:
                    w = lowbit_index(x)
                    x &= x - U1
                    if rows[w] & common:
                        return True
    return False


@njit(cache=True)
def census_range(n, lo, hi, do_decomp, do_degen, counts, ex_nondecomp, ex_nondegen):
    """Tally graph indices [lo, hi); exemplar arrays are filled in index order."""
    size = 1 << n
    rows = np.zeros(max(n, 1), dtype=np.uint64)
    indep = np.zeros(size, dtype=np.uint8)
    par = np.zeros(size, dtype=np.uint8)
    memo = np.zeros(size, dtype=np.uint8)
    choice = np.zeros(size, dtype=np.int64)
    bad = np.zeros(size, dtype=np.uint8)
    touched = np.zeros(size, dtype=np.int64)
    order = np.zeros(max(n, 1), dtype=np.int64)
    n_ex1 = 0
    n_ex2 = 0
    for g in range(lo, hi):
        _rows_from_index(n, g, rows)
        counts[C_TOTAL] += 1
        even = popcount(np.uint64(g)) % 2 == 0
        if even:
            counts[C_EVEN] += 1
        decomp = False
        if do_decomp and even:
            decomp_tables(rows, n, indep, par)
            memo[:] = 0
            decomp = decomp_search(n, indep, par, memo, choice)
            if decomp:
                counts[C_EVEN_DECOMP] += 1
            elif n_ex1 < ex_nondecomp.shape[0]:
                ex_nondecomp[n_ex1] = g
                n_ex1 += 1
            if not _has_k4(rows, n):
                counts[C_K4FREE_EVEN] += 1
                if not decomp:
                    counts[C_K4FREE_EVEN_NONDECOMP] += 1
        if do_degen:
            greedy_ok = greedy_stuck(rows, n) == U0
            degen = greedy_ok or degenerate_search(rows, n, bad, touched, order)
            if degen:
                counts[C_DEGEN] += 1
                if not greedy_ok:
                    counts[C_GREEDY_INCOMPLETE] += 1
                if do_decomp and even and not decomp:
                    counts[C_DEGEN_EVEN_NONDECOMP] += 1
            else:
                counts[C_NONDEGEN] += 1
                all_odd = True
                for v in range(n):
                    if popcount(rows[v]) % 2 == 0:
                        all_odd = False
                if not all_odd:
                    counts[C_NONDEGEN_NOT_ALL_ODD] += 1
                if n_ex2 < ex_nondegen.shape[0]:
                    ex_nondegen[n_ex2] = g
                    n_ex2 += 1
    return n_ex1, n_ex2


# ---------------------------------------------------------------- Monte Carlo


@njit(cache=True)
def mc_degeneracy(n, seed, start, count, out):
    """out[0] += non-even-degenerate samples, out[1] += greedy failures."""
    rows = np.zeros(max(n, 1), dtype=np.uint64)
    size = 1 << n
    bad = np.zeros(size, dtype=np.uint8)
    touched = np.zeros(min(size, 1 << 20), dtype=np.int64)
    order = np.zeros(max(n, 1), dtype=np.int64)
    for i in range(start, start + count):
        gnp_rows(n, 0.5, seed, TAG_GNP, i, 0, rows)
        if greedy_stuck(rows, n) != U0:
            out[1] += 1
            if not degenerate_search(rows, n, bad, touched, order):
                out[0] += 1


@njit(cache=True)
def mc_bstar(n, s, seed, start, count, out):
    """out: [G non-degenerate, H non-degenerate, both, failed draws]."""
    g_rows = np.zeros(max(n, 1), dtype=np.uint64)
    h_rows = np.zeros(max(n, 1), dtype=np.uint64)
    size = 1 << n
    bad = np.zeros(size, dtype=np.uint8)
    touched = np.zeros(min(size, 1 << 20), dtype=np.int64)
    order = np.zeros(max(n, 1), dtype=np.int64)
    for i in range(start, start + count):
        if linked_pair_rows(n, s, True, seed, i, g_rows, h_rows, 1000) < 0:
            out[3] += 1
            continue
        gd, _ = is_degenerate(g_rows, n, bad, touched, order)
        hd, _ = is_degenerate(h_rows, n, bad, touched, order)
        if not gd:
            out[0] += 1
        if not hd:
            out[1] += 1
        if not gd and not hd:
            out[2] += 1


@njit(cache=True)
def removal_process(rows, nv, steps, seed, stream):
    """Run the smallest-label even-degree removal for ``steps`` steps.

    Returns (removed set, every removal had even degree).  When no even vertex
    exists a uniformly random remaining vertex is removed instead.
    """
    rem = low_mask(nv)
    removed = U0
    all_even = True
    for step in range(steps):
        pick = -1
        for v in range(nv):
            if (rem >> np.uint64(v)) & U1 and popcount(rows[v] & rem) % 2 == 0:
                pick = v
                break
        if pick < 0:
            all_even = False
            left = popcount(rem)
            idx = np.int64(uniform01(key_hash(seed, TAG_PICK, stream, step, 0)) * left)
            x = rem
            for _ in range(idx):
                x &= x - U1
            pick = lowbit_index(x)
        rem &= ~(U1 << np.uint64(pick))
        removed |= U1 << np.uint64(pick)
    return removed, all_even


@njit(cache=True)
def is_initial(c, n, t, a):
    """(t, a)-initial test on 0-based labels: [n-t] within C within [n+t], |[n] minus C| <= a."""
    if popcount(c) != n:
        return False
    lo = low_mask(n - t)
    hi = low_mask(n + t)
    if lo & ~c:
        return False
    if c & ~hi:
        return False
    return popcount(low_mask(n) & ~c) <= a


@njit(cache=True)
def mc_removal(n, t, a, seed, start, count, out):
    """out: [event F, all removals even, removed set (t, a)-initial]."""
    nv = 2 * n
    rows = np.zeros(nv, dtype=np.uint64)
    for i in range(start, start + count):
        gnp_rows(nv, 0.5, seed, TAG_PROCESS, i, 0, rows)
        c, all_even = removal_process(rows, nv, n, seed, i)
        init = is_initial(c, n, t, a)
        if all_even:
            out[1] += 1
        if init:
            out[2] += 1
        if all_even and init:
            out[0] += 1


@njit(cache=True)
def mc_decomposability(n, p, seed, start, count, out):
    """out: [certified decomposable, certified non-decomposable, witness failures, rejected]."""
    rows = np.zeros(max(n, 1), dtype=np.uint64)
    size = 1 << n
    indep = np.zeros(size, dtype=np.uint8)
    par = np.zeros(size, dtype=np.uint8)
    memo = np.zeros(size, dtype=np.uint8)
    choice = np.zeros(size, dtype=np.int64)
    steps = np.zeros(max(n, 1), dtype=np.int64)
    for i in range(start, start + count):
        if gnp_even_rows(n, p, seed, TAG_GNP, i, rows, 100000) < 0:
            out[3] += 1
            continue
        ok, verified = decomposable_verified(rows, n, indep, par, memo, choice, steps)
        if ok:
            if verified:
                out[0] += 1
            else:
                out[2] += 1
        else:
            out[1] += 1


@njit(cache=True)
def mc_parity_vectors(n, seed, start, count, hist):
    rows = np.zeros(max(n, 1), dtype=np.uint64)
    for i in range(start, start + count):
        gnp_rows(n, 0.5, seed, TAG_GNP, i, 0, rows)
        vec = 0
        for v in range(n):
            vec |= (popcount(rows[v]) & 1) << v
        hist[vec] += 1


@njit(cache=True)
def mc_forgetful(n, target, drop, seed, start, count, hist):
    """G(n, 1/2) conditioned on degree-parity vector ``target`` (by rejection);
    tallies G minus ``drop`` by its pair-bit index.  Returns total draws."""
    rows = np.zeros(n, dtype=np.uint64)
    draws = 0
    for i in range(start, start + count):
        attempt = 0
        while True:
            gnp_rows(n, 0.5, seed, TAG_FORGET, i, attempt, rows)
            draws += 1
            attempt += 1
            vec = 0
            for v in range(n):
                vec |= (popcount(rows[v]) & 1) << v
            if vec == target:
                break
        idx = 0
        k = 0
        for j in range(n):
            if j == drop:
                continue
            for i2 in range(j):
                if i2 == drop:
                    continue
                if (rows[i2] >> np.uint64(j)) & U1:
                    idx |= 1 << k
                k += 1
        hist[idx] += 1
    return draws
