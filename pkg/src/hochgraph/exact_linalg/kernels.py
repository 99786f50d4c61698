"""Low-level Smith reduction kernels.

Three lanes compute the same reduction:

* a numba ``@njit`` kernel on int64 arrays (the default hot path),
* a pure-numpy int64 kernel (selected with ``HOCHGRAPH_NUMBA=0``),
* an exact kernel on object arrays holding Python ints.

The int64 lanes abort with STATUS_OVERFLOW as soon as any produced entry
leaves [-ENTRY_LIMIT, ENTRY_LIMIT]; the caller then reruns the exact lane.
Guarding after every row/column operation keeps all operands of the next
operation at most ENTRY_LIMIT = 2**31, so each intermediate |a - q*b| is
bounded by 2**62 + 2**31 and never wraps int64.
"""

import os

import numpy as np

ENTRY_LIMIT = 1 << 31

STATUS_OK = 0
STATUS_OVERFLOW = 1


def numba_enabled() -> bool:
    """True when the jitted lane should be used (env flag HOCHGRAPH_NUMBA)."""
    flag = os.environ.get("HOCHGRAPH_NUMBA", "").strip().lower()
    if flag in ("0", "no", "off", "false"):
        return False
    return _NUMBA_KERNEL is not None


def smith_reduce_i64(a, u, v, w, track_u, track_v, track_w, use_numba=None):
    """Diagonalize ``a`` in place; returns STATUS_OK or STATUS_OVERFLOW.

    On success ``a`` holds the Smith form and ``u @ a_orig @ v`` reproduces
    it; ``w`` accumulates the inverse of ``v``.  Transform arrays are only
    touched when the matching ``track_*`` flag is set.
    """
    if use_numba is None:
        use_numba = numba_enabled()
    if use_numba and _NUMBA_KERNEL is not None:
        return _NUMBA_KERNEL(a, u, v, w, track_u, track_v, track_w)
    return _smith_reduce_py(a, u, v, w, track_u, track_v, track_w, True)


def smith_reduce_exact(a, u, v, w, track_u, track_v, track_w):
    """Exact lane on object-dtype arrays of Python ints (never overflows)."""
    status = _smith_reduce_py(a, u, v, w, track_u, track_v, track_w, False)
    assert status == STATUS_OK
    return status


def _row_max(row):
    if row.size == 0:
        return 0
    return int(np.max(np.abs(row)))


def _smith_reduce_py(a, u, v, w, track_u, track_v, track_w, guarded):
    m, n = a.shape
    limit = ENTRY_LIMIT
    t = 0
    while True:
        # nonzero entry of minimal absolute value in the tail block
        pr, pc = -1, -1
        best = 0
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                x = row[j]
                if x != 0:
                    x = -x if x < 0 else x
                    if pr < 0 or x < best:
                        best = x
                        pr, pc = i, j
                        if best == 1:
                            break
            if best == 1:
                break
        if pr < 0:
            break
        _swap_rows(a, u, t, pr, track_u)
        _swap_cols(a, v, w, t, pc, track_v, track_w)
        while True:
            dirty = False
            r = t + 1
            while r < m:
                x = a[r, t]
                if x != 0:
                    q = x // a[t, t]
                    if q != 0:
                        a[r] -= q * a[t]
                        if guarded and _row_max(a[r]) > limit:
                            return STATUS_OVERFLOW
                        if track_u:
                            u[r] -= q * u[t]
                            if guarded and _row_max(u[r]) > limit:
                                return STATUS_OVERFLOW
                    if a[r, t] != 0:
                        _swap_rows(a, u, t, r, track_u)
                        dirty = True
                        continue
                r += 1
            c = t + 1
            while c < n:
                x = a[t, c]
                if x != 0:
                    q = x // a[t, t]
                    if q != 0:
                        a[:, c] -= q * a[:, t]
                        if guarded and _row_max(a[:, c]) > limit:
                            return STATUS_OVERFLOW
                        if track_v:
                            v[:, c] -= q * v[:, t]
                            if guarded and _row_max(v[:, c]) > limit:
                                return STATUS_OVERFLOW
                        if track_w:
                            w[t] += q * w[c]
                            if guarded and _row_max(w[t]) > limit:
                                return STATUS_OVERFLOW
                    if a[t, c] != 0:
                        _swap_cols(a, v, w, t, c, track_v, track_w)
                        dirty = True
                        break
                c += 1
            if dirty:
                continue
            # divisibility sweep: the pivot must divide the remaining block
            p = a[t, t]
            offender = -1
            for i in range(t + 1, m):
                row = a[i]
                for j in range(t + 1, n):
                    if row[j] % p != 0:
                        offender = i
                        break
                if offender >= 0:
                    break
            if offender < 0:
                break
            a[t] += a[offender]
            if guarded and _row_max(a[t]) > limit:
                return STATUS_OVERFLOW
            if track_u:
                u[t] += u[offender]
                if guarded and _row_max(u[t]) > limit:
                    return STATUS_OVERFLOW
        t += 1
    for i in range(min(m, n)):
        if a[i, i] < 0:
            a[i, i] = -a[i, i]
            if track_u:
                u[i] = -u[i]
    return STATUS_OK


def _swap_rows(a, u, i, j, track_u):
    if i != j:
        a[[i, j]] = a[[j, i]]
        if track_u:
            u[[i, j]] = u[[j, i]]


def _swap_cols(a, v, w, i, j, track_v, track_w):
    if i != j:
        a[:, [i, j]] = a[:, [j, i]]
        if track_v:
            v[:, [i, j]] = v[:, [j, i]]
        if track_w:
            w[[i, j]] = w[[j, i]]


def _build_numba_kernel():
    try:
        from numba import njit
    except ImportError:
        return None

    @njit(cache=True)
    def kernel(a, u, v, w, track_u, track_v, track_w):  # pragma: no cover
        m, n = a.shape
        limit = np.int64(ENTRY_LIMIT)
        t = 0
        while True:
            pr = -1
            pc = -1
            best = np.int64(0)
            for i in range(t, m):
                for j in range(t, n):
                    x = a[i, j]
                    if x != 0:
                        if x < 0:
                            x = -x
                        if pr < 0 or x < best:
                            best = x
                            pr = i
                            pc = j
                            if best == 1:
                                break
                if best == 1:
                    break
            if pr < 0:
                break
            if pr != t:
                for j in range(n):
                    tmp = a[t, j]
                    a[t, j] = a[pr, j]
                    a[pr, j] = tmp
                if track_u:
                    for j in range(m):
                        tmp = u[t, j]
                        u[t, j] = u[pr, j]
                        u[pr, j] = tmp
            if pc != t:
                for i in range(m):
                    tmp = a[i, t]
                    a[i, t] = a[i, pc]
                    a[i, pc] = tmp
                if track_v:
                    for i in range(n):
                        tmp = v[i, t]
                        v[i, t] = v[i, pc]
                        v[i, pc] = tmp
                if track_w:
                    for j in range(n):
                        tmp = w[t, j]
                        w[t, j] = w[pc, j]
                        w[pc, j] = tmp
            while True:
                dirty = False
                r = t + 1
                while r < m:
                    x = a[r, t]
                    if x != 0:
                        q = x // a[t, t]
                        if q != 0:
                            big = np.int64(0)
                            for j in range(n):
                                y = a[r, j] - q * a[t, j]
                                a[r, j] = y
                                if y < 0:
                                    y = -y
                                if y > big:
                                    big = y
                            if big > limit:
                                return STATUS_OVERFLOW
                            if track_u:
                                big = np.int64(0)
                                for j in range(m):
                                    y = u[r, j] - q * u[t, j]
                                    u[r, j] = y
                                    if y < 0:
                                        y = -y
                                    if y > big:
                                        big = y
                                if big > limit:
                                    return STATUS_OVERFLOW
                        if a[r, t] != 0:
                            for j in range(n):
                                tmp = a[t, j]
                                a[t, j] = a[r, j]
                                a[r, j] = tmp
                            if track_u:
                                for j in range(m):
                                    tmp = u[t, j]
                                    u[t, j] = u[r, j]
                                    u[r, j] = tmp
                            dirty = True
                            continue
                    r += 1
                c = t + 1
                while c < n:
                    x = a[t, c]
                    if x != 0:
                        q = x // a[t, t]
                        if q != 0:
                            big = np.int64(0)
                            for i in range(m):
                                y = a[i, c] - q * a[i, t]
                                a[i, c] = y
                                if y < 0:
                                    y = -y
                                if y > big:
                                    big = y
                            if big > limit:
                                return STATUS_OVERFLOW
                            if track_v:
                                big = np.int64(0)
                                for i in range(n):
                                    y = v[i, c] - q * v[i, t]
                                    v[i, c] = y
                                    if y < 0:
                                        y = -y
                                    if y > big:
                                        big = y
                                if big > limit:
                                    return STATUS_OVERFLOW
                            if track_w:
                                big = np.int64(0)
                                for j in range(n):
                                    y = w[t, j] + q * w[c, j]
                                    w[t, j] = y
                                    if y < 0:
                                        y = -y
                                    if y > big:
                                        big = y
                                if big > limit:
                                    return STATUS_OVERFLOW
                        if a[t, c] != 0:
                            for i in range(m):
                                tmp = a[i, t]
                                a[i, t] = a[i, c]
                                a[i, c] = tmp
                            if track_v:
                                for i in range(n):
                                    tmp = v[i, t]
                                    v[i, t] = v[i, c]
                                    v[i, c] = tmp
                            if track_w:
                                for j in range(n):
                                    tmp = w[t, j]
                                    w[t, j] = w[c, j]
                                    w[c, j] = tmp
                            dirty = True
                            break
                    c += 1
                if dirty:
                    continue
                p = a[t, t]
                offender = -1
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if a[i, j] % p != 0:
                            offender = i
                            break
                    if offender >= 0:
                        break
                if offender < 0:
                    break
                big = np.int64(0)
                for j in range(n):
                    y = a[t, j] + a[offender, j]
                    a[t, j] = y
                    if y < 0:
                        y = -y
                    if y > big:
                        big = y
                if big > limit:
                    return STATUS_OVERFLOW
                if track_u:
                    big = np.int64(0)
                    for j in range(m):
                        y = u[t, j] + u[offender, j]
                        u[t, j] = y
                        if y < 0:
                            y = -y
                        if y > big:
                            big = y
                    if big > limit:
                        return STATUS_OVERFLOW
            t += 1
        k = m if m < n else n
        for i in range(k):
            if a[i, i] < 0:
                a[i, i] = -a[i, i]
                if track_u:
                    for j in range(m):
                        u[i, j] = -u[i, j]
        return STATUS_OK

    return kernel


_NUMBA_KERNEL = _build_numba_kernel()
