"""Pure-Python attribution/resolution kernels.

Mirrors ``_ckernels.pyx`` line for line; used when the compiled module is
unavailable or ``EVENTEVAL_PURE=1`` is set.

Inputs are strictly increasing integer sequences. Memberships are compared
through integer distances, so argmax ties are exact.
"""

from __future__ import annotations

RULE_OPTIMAL = 0
RULE_GREEDY = 1
RULE_STRICT = 2

_EPS = 1e-9


def membership(t_d: float, t_e: float, k: float) -> float:
    return max(1.0 - abs(t_d - t_e) / k, 0.0)


def nearest_events(events, detections):
    """Index of the nearest event for every detection.

    Returns ``(lo, hi)``; ``hi[i] == lo[i] + 1`` when detection ``i`` is
    equidistant to two adjacent events, otherwise ``hi[i] == lo[i]``.
    """
    m = len(events)
    lo = [0] * len(detections)
    hi = [0] * len(detections)
    j = 0
    for i, t in enumerate(detections):
        while j + 1 < m and events[j + 1] <= t:
            j += 1
        if t <= events[j] or j + 1 == m:
            lo[i] = hi[i] = j
            continue
        dl = t - events[j]
        dr = events[j + 1] - t
        if dl < dr:
            lo[i] = hi[i] = j
        elif dr < dl:
            lo[i] = hi[i] = j + 1
        else:
            lo[i] = j
            hi[i] = j + 1
    return lo, hi


def _candidates(events, detections, k, lo, hi):
    """Best private candidate per event and the shared midpoint candidates.

    ``private[j]`` is the closest (then earliest) detection attributed to
    event ``j`` alone; ``shared[j]`` is a detection tied between events
    ``j`` and ``j + 1``. Both hold ``-1`` when absent. Only detections with
    positive membership (distance < k) qualify.
    """
    m = len(events)
    private = [-1] * m
    private_dist = [0] * m
    shared = [-1] * max(m - 1, 0)
    for i, t in enumerate(detections):
        j = lo[i]
        dist = abs(t - events[j])
        if not dist < k:
            continue
        if hi[i] != j:
            shared[j] = i
        elif private[j] < 0 or dist < private_dist[j]:
            private[j] = i
            private_dist[j] = dist
    return private, shared


def _best(events, detections, j, options):
    best = -1
    best_dist = 0
    for i in options:
        if i < 0:
            continue
        dist = abs(detections[i] - events[j])
        if best < 0 or dist < best_dist or (dist == best_dist and detections[i] < detections[best]):
            best = i
            best_dist = dist
    return best


def resolve(events, detections, k: float, rule: int = RULE_OPTIMAL):
    """Pick one representative detection per event and score everything.

    Returns ``(rep, es, ds)``: representative detection index per event
    (``-1`` for none), event scores and detection scores.
    """
    m = len(events)
    n = len(detections)
    rep = [-1] * m
    es = [0.0] * m
    ds = [0.0] * n
    if m == 0 or n == 0:
        return rep, es, ds
    lo, hi = nearest_events(events, detections)
    private, shared = _candidates(events, detections, k, lo, hi)

    def left(j):
        return shared[j - 1] if j > 0 else -1

    def right(j):
        return shared[j] if j < m - 1 else -1

    if rule == RULE_STRICT:
        for j in range(m):
            choice = _best(events, detections, j, (private[j], left(j), right(j)))
            if choice >= 0 and (j == 0 or choice != rep[j - 1]):
                rep[j] = choice
    elif rule == RULE_GREEDY:
        left_free = True
        for j in range(m):
            opts = (private[j], left(j) if left_free else -1, right(j))
            choice = _best(events, detections, j, opts)
            rep[j] = choice
            left_free = not (choice >= 0 and choice == right(j))
    else:
        # value-to-go per event and availability of its left shared detection
        def gain(j, left_free, take_right):
            opts = (private[j], left(j) if left_free else -1, right(j) if take_right else -1)
            c = _best(events, detections, j, opts)
            g = membership(detections[c], events[j], k) if c >= 0 else 0.0
            return c, g

        nxt = [0.0, 0.0]  # nxt[left_free]
        table = [None] * m
        for j in range(m - 1, -1, -1):
            cur = [0.0, 0.0]
            for lf in (0, 1):
                best_v = -1.0
                for take_right in (True, False):
                    c, g = gain(j, lf == 1, take_right)
                    consumed = c >= 0 and c == right(j)
                    v = g + nxt[0 if consumed else 1]
                    if v > best_v + _EPS:
                        best_v = v
                cur[lf] = best_v
            table[j] = cur
            nxt = cur
        lf = True
        for j in range(m):
            after = table[j + 1] if j + 1 < m else [0.0, 0.0]
            c, g = gain(j, lf, True)
            consumed = c >= 0 and c == right(j)
            v_take = g + after[0 if consumed else 1]
            if consumed:
                c2, g2 = gain(j, lf, False)
                if g2 + after[1] > v_take + _EPS:
                    c, consumed = c2, False
            rep[j] = c
            lf = not consumed

    for j in range(m):
        i = rep[j]
        if i >= 0:
            es[j] = membership(detections[i], events[j], k)
            ds[i] = es[j]
    return rep, es, ds


def soft_tp(events, detections, k: float, rule: int = RULE_OPTIMAL) -> float:
    _, es, _ = resolve(events, detections, k, rule)
    return sum(es)
