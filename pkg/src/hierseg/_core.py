"""Numba kernels for the union-find sweeps behind partitions, trees and MSTs.

All kernels assume int64 arrays.  Tree-facing kernels rely on the canonical
node numbering (parent id strictly greater than every child id).
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@njit(cache=True)
def component_roots(n, eu, ev):
    """Union every listed edge; return each vertex's root, with the smallest
    member id as the root of its component (canonical labels)."""
    parent = np.arange(n, dtype=np.int64)
    for i in range(eu.shape[0]):
        ru = _find(parent, eu[i])
        rv = _find(parent, ev[i])
        if ru != rv:
            if rv < ru:
                ru, rv = rv, ru
            parent[rv] = ru
    for v in range(n):
        _find(parent, v)
    return parent


@njit(cache=True)
def mst_pick(n, eu, ev, order):
    """Kruskal sweep over edges in `order`; True where the edge joins the tree."""
    parent = np.arange(n, dtype=np.int64)
    pick = np.zeros(eu.shape[0], dtype=np.bool_)
    taken = 0
    for oi in range(order.shape[0]):
        i = order[oi]
        ru = _find(parent, eu[i])
        rv = _find(parent, ev[i])
        if ru != rv:
            parent[rv] = ru
            pick[i] = True
            taken += 1
    return pick, taken


@njit(cache=True)
def merge_forest(n, eu, ev, ew, order, f):
    """Single-linkage merge sweep over edges sorted by `order`.

    Produces a raw merge forest: slots 0..n-1 are per-vertex singletons, new
    internal slots are appended per merge level.  A node created at level w
    absorbs later merges at the same w, so equal-level chains may remain;
    `resolve_chains` dissolves them afterwards.  Returns node arrays plus the
    slot count and the number of union operations performed.
    """
    parent = np.arange(n, dtype=np.int64)
    size = np.ones(n, dtype=np.int64)
    node_of = np.arange(n, dtype=np.int64)

    cap = 2 * n
    nparent = np.full(cap, -1, dtype=np.int64)
    nlevel = np.zeros(cap, dtype=np.int64)
    narea = np.zeros(cap, dtype=np.int64)
    nmin = np.zeros(cap, dtype=np.int64)
    nmax = np.zeros(cap, dtype=np.int64)
    nminpix = np.zeros(cap, dtype=np.int64)
    for v in range(n):
        narea[v] = 1
        nmin[v] = f[v]
        nmax[v] = f[v]
        nminpix[v] = v

    cnt = n
    merges = 0
    for oi in range(order.shape[0]):
        i = order[oi]
        w = ew[i]
        ru = _find(parent, eu[i])
        rv = _find(parent, ev[i])
        if ru == rv:
            continue
        na = node_of[ru]
        nb = node_of[rv]
        if nlevel[na] == w:
            keep = na
            other = nb
        elif nlevel[nb] == w:
            keep = nb
            other = na
        else:
            keep = cnt
            cnt += 1
            nlevel[keep] = w
            narea[keep] = narea[na]
            nmin[keep] = nmin[na]
            nmax[keep] = nmax[na]
            nminpix[keep] = nminpix[na]
            nparent[na] = keep
            other = nb
        nparent[other] = keep
        narea[keep] += narea[other]
        if nmin[other] < nmin[keep]:
            nmin[keep] = nmin[other]
        if nmax[other] > nmax[keep]:
            nmax[keep] = nmax[other]
        if nminpix[other] < nminpix[keep]:
            nminpix[keep] = nminpix[other]
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        node_of[ru] = keep
        merges += 1
    return nparent, nlevel, narea, nmin, nmax, nminpix, cnt, merges


@njit(cache=True)
def resolve_chains(nparent, nlevel, cnt):
    """Survivor of each node's equal-level parent chain (the chain's top)."""
    surv = np.full(cnt, -1, dtype=np.int64)
    for j in range(cnt):
        x = j
        while surv[x] == -1:
            p = nparent[x]
            if p != -1 and nlevel[p] == nlevel[x]:
                x = p
            else:
                surv[x] = x
                break
        top = surv[x]
        y = j
        while surv[y] == -1:
            nxt = nparent[y]
            surv[y] = top
            y = nxt
    return surv


@njit(cache=True)
def highest_qualifying(parent, qualifies):
    """Per node, its topmost qualifying ancestor-or-self; -1 where the node
    itself does not qualify.  Requires parent ids greater than child ids and
    a downward-closed qualifying set."""
    n = parent.shape[0]
    best = np.full(n, -1, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        if not qualifies[j]:
            continue
        p = parent[j]
        if p != -1 and qualifies[p]:
            best[j] = best[p]
        else:
            best[j] = j
    return best


@njit(cache=True)
def nearest_kept(parent, keep):
    """Per node, the nearest kept ancestor-or-self (root must be kept)."""
    n = parent.shape[0]
    out = np.empty(n, dtype=np.int64)
    for j in range(n - 1, -1, -1):
        if keep[j]:
            out[j] = j
        else:
            out[j] = out[parent[j]]
    return out


@njit(cache=True)
def meet_values(parent, value, a, b):
    """value[] at the lowest common ancestor of node pairs (a[k], b[k])."""
    out = np.empty(a.shape[0], dtype=np.int64)
    for k in range(a.shape[0]):
        x = a[k]
        y = b[k]
        while x != y:
            if x < y:
                x = parent[x]
            else:
                y = parent[y]
        out[k] = value[x]
    return out
