# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled attribution/resolution kernels; see ``_pykernels`` for the reference."""

from libc.stdlib cimport free, malloc

cdef double EPS = 1e-9

cdef enum:
    _OPTIMAL = 0
    _GREEDY = 1
    _STRICT = 2

RULE_OPTIMAL = _OPTIMAL
RULE_GREEDY = _GREEDY
RULE_STRICT = _STRICT


cdef inline double _membership(double t_d, double t_e, double k) noexcept nogil:
    cdef double d = t_d - t_e if t_d >= t_e else t_e - t_d
    cdef double v = 1.0 - d / k
    return v if v > 0.0 else 0.0


def membership(double t_d, double t_e, double k):
    return _membership(t_d, t_e, k)


cdef inline long long _absdiff(long long a, long long b) noexcept nogil:
    return a - b if a >= b else b - a


cdef void _nearest(const long long* ev, Py_ssize_t m, const long long* det, Py_ssize_t n,
                   long long* lo, long long* hi) noexcept nogil:
    cdef Py_ssize_t i
    cdef Py_ssize_t j = 0
    cdef long long t, dl, dr
    for i in range(n):
        t = det[i]
        while j + 1 < m and ev[j + 1] <= t:
            j += 1
        if t <= ev[j] or j + 1 == m:
            lo[i] = j
            hi[i] = j
            continue
        dl = t - ev[j]
        dr = ev[j + 1] - t
        if dl < dr:
            lo[i] = j
            hi[i] = j
        elif dr < dl:
            lo[i] = j + 1
            hi[i] = j + 1
        else:
            lo[i] = j
            hi[i] = j + 1


cdef long long* _load(events, detections, Py_ssize_t extra) except NULL:
    # one int64 block: events, detections, then `extra` scratch slots
    cdef Py_ssize_t m = len(events), n = len(detections), i
    cdef long long* buf = <long long*> malloc((m + n + extra + 1) * sizeof(long long))
    if buf == NULL:
        raise MemoryError()
    try:
        for i in range(m):
            buf[i] = events[i]
        for i in range(n):
            buf[m + i] = detections[i]
    except BaseException:
        free(buf)
        raise
    return buf


def nearest_events(events, detections):
    cdef Py_ssize_t m = len(events), n = len(detections), i
    cdef long long* buf = _load(events, detections, 2 * n)
    cdef long long* lo = buf + m + n
    cdef long long* hi = lo + n
    try:
        if m > 0:
            _nearest(buf, m, buf + m, n, lo, hi)
        return [lo[i] for i in range(n)], [hi[i] for i in range(n)]
    finally:
        free(buf)


cdef inline long long _best3(const long long* ev, const long long* det, Py_ssize_t j,
                             long long a, long long b, long long c) noexcept nogil:
    cdef long long opts[3]
    cdef long long best = -1, i
    cdef long long best_dist = 0, dist
    cdef int q
    opts[0] = a
    opts[1] = b
    opts[2] = c
    for q in range(3):
        i = opts[q]
        if i < 0:
            continue
        dist = _absdiff(det[i], ev[j])
        if best < 0 or dist < best_dist or (dist == best_dist and det[i] < det[best]):
            best = i
            best_dist = dist
    return best


cdef void _resolve(const long long* ev, Py_ssize_t m, const long long* det, Py_ssize_t n,
                   double k, int rule, long long* scratch, double* table,
                   long long* rep) noexcept nogil:
    cdef long long* lo = scratch
    cdef long long* hi = lo + n
    cdef long long* priv = hi + n
    cdef long long* pdist = priv + m
    cdef long long* shared = pdist + m
    cdef Py_ssize_t i, j
    cdef long long dist, c, c2, lft, rgt
    cdef bint left_free, consumed, take_right
    cdef int lf, tr
    cdef double g, g2, v, best_v, v_take

    for j in range(m):
        rep[j] = -1
        priv[j] = -1
        pdist[j] = 0
        shared[j] = -1
    _nearest(ev, m, det, n, lo, hi)
    for i in range(n):
        j = lo[i]
        dist = _absdiff(det[i], ev[j])
        if not (<double>dist < k):
            continue
        if hi[i] != j:
            shared[j] = i
        elif priv[j] < 0 or dist < pdist[j]:
            priv[j] = i
            pdist[j] = dist

    if rule == _STRICT:
        for j in range(m):
            lft = shared[j - 1] if j > 0 else -1
            rgt = shared[j] if j < m - 1 else -1
            c = _best3(ev, det, j, priv[j], lft, rgt)
            if c >= 0 and (j == 0 or c != rep[j - 1]):
                rep[j] = c
    elif rule == _GREEDY:
        left_free = True
        for j in range(m):
            lft = shared[j - 1] if (j > 0 and left_free) else -1
            rgt = shared[j] if j < m - 1 else -1
            c = _best3(ev, det, j, priv[j], lft, rgt)
            rep[j] = c
            left_free = not (c >= 0 and c == rgt)
    else:
        # table[2 * j + lf]; row m is the empty tail
        table[2 * m] = 0.0
        table[2 * m + 1] = 0.0
        for j in range(m - 1, -1, -1):
            rgt = shared[j] if j < m - 1 else -1
            for lf in range(2):
                lft = shared[j - 1] if (j > 0 and lf == 1) else -1
                best_v = -1.0
                for tr in range(2):
                    take_right = tr == 0
                    c = _best3(ev, det, j, priv[j], lft, rgt if take_right else -1)
                    g = _membership(<double>det[c], <double>ev[j], k) if c >= 0 else 0.0
                    consumed = c >= 0 and c == rgt
                    v = g + table[2 * (j + 1) + (0 if consumed else 1)]
                    if v > best_v + EPS:
                        best_v = v
                table[2 * j + lf] = best_v
        left_free = True
        for j in range(m):
            lft = shared[j - 1] if (j > 0 and left_free) else -1
            rgt = shared[j] if j < m - 1 else -1
            c = _best3(ev, det, j, priv[j], lft, rgt)
            g = _membership(<double>det[c], <double>ev[j], k) if c >= 0 else 0.0
            consumed = c >= 0 and c == rgt
            v_take = g + table[2 * (j + 1) + (0 if consumed else 1)]
            if consumed:
                c2 = _best3(ev, det, j, priv[j], lft, -1)
                g2 = _membership(<double>det[c2], <double>ev[j], k) if c2 >= 0 else 0.0
                if g2 + table[2 * (j + 1) + 1] > v_take + EPS:
                    c = c2
                    consumed = False
            rep[j] = c
            left_free = not consumed


def resolve(events, detections, double k, int rule=_OPTIMAL):
    cdef Py_ssize_t m = len(events), n = len(detections), j
    if m == 0 or n == 0:
        return [-1] * m, [0.0] * m, [0.0] * n
    cdef long long* buf = _load(events, detections, 2 * n + 4 * m)
    cdef double* table = <double*> malloc((2 * m + 2) * sizeof(double))
    if table == NULL:
        free(buf)
        raise MemoryError()
    cdef long long* ev = buf
    cdef long long* det = buf + m
    cdef long long* rep = det + n
    cdef long long c
    try:
        with nogil:
            _resolve(ev, m, det, n, k, rule, rep + m, table, rep)
        es = [0.0] * m
        ds = [0.0] * n
        reps = [-1] * m
        for j in range(m):
            c = rep[j]
            if c >= 0:
                reps[j] = c
                es[j] = _membership(<double>det[c], <double>ev[j], k)
                ds[c] = es[j]
        return reps, es, ds
    finally:
        free(buf)
        free(table)


def soft_tp(events, detections, double k, int rule=_OPTIMAL):
    _, es, _ = resolve(events, detections, k, rule)
    return sum(es)
