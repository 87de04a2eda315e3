"""Brute-force reference implementations for the tests.

Everything here is deliberately independent of the library's union-find /
tree machinery: plain BFS floods, Floyd-Warshall relaxation and direct
neighbourhood scans over 2D arrays.
"""

from collections import deque

import numpy as np


def neighbours4(x, y, w, h):
    if x > 0:
        yield x - 1, y
    if x + 1 < w:
        yield x + 1, y
    if y > 0:
        yield x, y - 1
    if y + 1 < h:
        yield x, y + 1


def flood_alpha_labels(values2d, alpha):
    """Canonical labels of the components linked by steps of at most alpha."""
    f = np.asarray(values2d)
    h, w = f.shape
    labels = np.full(h * w, -1, dtype=np.int64)
    for start in range(h * w):
        if labels[start] != -1:
            continue
        labels[start] = start  # row-major scan: first pixel found is smallest
        queue = deque([start])
        while queue:
            p = queue.popleft()
            px, py = p % w, p // w
            for nx, ny in neighbours4(px, py, w, h):
                q = ny * w + nx
                if labels[q] == -1 and abs(int(f[py, px]) - int(f[ny, nx])) <= alpha:
                    labels[q] = start
                    queue.append(q)
    return labels


def component_pixels(labels, p):
    return frozenset(np.flatnonzero(labels == labels[p]).tolist())


def constrained_labels(values2d, alpha, omega):
    """Per pixel, the largest step-alpha_i component (alpha_i <= alpha) whose
    intensity range is at most omega; the component always exists because a
    pixel alone has range 0."""
    f = np.asarray(values2d)
    flat = f.ravel()
    h, w = f.shape
    by_alpha = [flood_alpha_labels(f, a) for a in range(alpha + 1)]
    out = np.full(h * w, -1, dtype=np.int64)
    for p in range(h * w):
        if out[p] != -1:
            continue
        chosen = frozenset([p])
        for a in range(alpha, -1, -1):
            comp = component_pixels(by_alpha[a], p)
            vals = flat[list(comp)]
            if int(vals.max()) - int(vals.min()) <= omega:
                chosen = comp
                break
        lab = min(chosen)
        for q in chosen:
            assert out[q] == -1, "constrained components overlap"
            out[q] = lab
    return out


def omega_labels(values2d, omega):
    f = np.asarray(values2d)
    amax = 0
    ff = f.astype(np.int64)
    if f.shape[1] > 1:
        amax = max(amax, int(np.abs(ff[:, 1:] - ff[:, :-1]).max()))
    if f.shape[0] > 1:
        amax = max(amax, int(np.abs(ff[1:, :] - ff[:-1, :]).max()))
    return constrained_labels(f, amax, omega)


def minimax_matrix(n, edges):
    """All-pairs minimax path values by Floyd-Warshall relaxation."""
    big = np.int64(1) << 40
    d = np.full((n, n), big, dtype=np.int64)
    np.fill_diagonal(d, 0)
    for u, v, wt in edges:
        if wt < d[u, v]:
            d[u, v] = wt
            d[v, u] = wt
    for k in range(n):
        np.minimum(d, np.maximum(d[:, k : k + 1], d[k : k + 1, :]), out=d)
    return d


def alpha_n_labels(values2d, alpha, n):
    """Components under alpha-steps restricted to pixels whose own count of
    in-range neighbours is at least n; everything below that is a singleton."""
    f = np.asarray(values2d)
    h, w = f.shape

    def degree(x, y):
        return sum(
            1
            for nx, ny in neighbours4(x, y, w, h)
            if abs(int(f[y, x]) - int(f[ny, nx])) <= alpha
        )

    ok = np.array([[degree(x, y) >= n for x in range(w)] for y in range(h)])
    labels = np.full(h * w, -1, dtype=np.int64)
    for start in range(h * w):
        if labels[start] != -1:
            continue
        labels[start] = start
        sx, sy = start % w, start // w
        if not ok[sy, sx]:
            continue
        queue = deque([start])
        while queue:
            p = queue.popleft()
            px, py = p % w, p // w
            for nx, ny in neighbours4(px, py, w, h):
                q = ny * w + nx
                if (
                    labels[q] == -1
                    and ok[ny, nx]
                    and abs(int(f[py, px]) - int(f[ny, nx])) <= alpha
                ):
                    labels[q] = start
                    queue.append(q)
    return labels


def regional_extrema_brute(values2d, maxima):
    """Binary mask of plateaus with no strictly greater (resp. lower) neighbour."""
    f = np.asarray(values2d)
    h, w = f.shape
    zone = flood_alpha_labels(f, 0)
    bad = set()
    for y in range(h):
        for x in range(w):
            for nx, ny in neighbours4(x, y, w, h):
                nv, v = int(f[ny, nx]), int(f[y, x])
                if (nv > v) if maxima else (nv < v):
                    bad.add(int(zone[y * w + x]))
    out = np.array([0 if int(z) in bad else 1 for z in zone], dtype=np.int64)
    return out
