"""Adaptive hit-or-miss transforms, separation maps and regional extrema.

All operators use 4-adjacency and look only at in-image neighbours (no
border padding), which matches the worked grids these maps are checked
against.
"""

from __future__ import annotations

import numpy as np

from ._core import component_roots
from .grid import GridImage, ScalarMap

__all__ = [
    "hmt_lower",
    "hmt_greater",
    "transition_mask",
    "min_separation_pixels",
    "max_separation_pixels",
    "min_separation_flatzones",
    "max_separation_flatzones",
    "regional_minima",
    "regional_maxima",
]

_BIG = np.int64(np.iinfo(np.int64).max // 4)


def _shifted(f: np.ndarray):
    """Yield (neighbour values, validity mask) for the four directions."""
    h, w = f.shape
    for dy, dx in ((-1, 0), (1, 0), (0, -1), (0, 1)):
        nv = np.zeros_like(f)
        mask = np.zeros(f.shape, dtype=bool)
        ys = slice(max(dy, 0), h + min(dy, 0))
        yd = slice(max(-dy, 0), h + min(-dy, 0))
        xs = slice(max(dx, 0), w + min(dx, 0))
        xd = slice(max(-dx, 0), w + min(-dx, 0))
        nv[yd, xd] = f[ys, xs]
        mask[yd, xd] = True
        yield nv, mask


def hmt_lower(image: GridImage) -> ScalarMap:
    """Per pixel: distance to its largest strictly lower neighbour, else 0."""
    f = image.as_array()
    best = np.full(f.shape, -1, dtype=np.int64)
    for nv, mask in _shifted(f):
        lower = mask & (nv < f)
        np.maximum(best, np.where(lower, nv, -1), out=best)
    out = np.where(best >= 0, f - best, 0)
    return ScalarMap.from_array(out)


def hmt_greater(image: GridImage) -> ScalarMap:
    """Per pixel: distance to its smallest strictly greater neighbour, else 0."""
    f = image.as_array()
    best = np.full(f.shape, _BIG, dtype=np.int64)
    for nv, mask in _shifted(f):
        greater = mask & (nv > f)
        np.minimum(best, np.where(greater, nv, _BIG), out=best)
    out = np.where(best < _BIG, best - f, 0)
    return ScalarMap.from_array(out)


def transition_mask(image: GridImage) -> ScalarMap:
    """1 where a pixel has both lower and greater neighbours, else 0."""
    lo = hmt_lower(image).as_array()
    hi = hmt_greater(image).as_array()
    return ScalarMap.from_array((np.minimum(lo, hi) > 0).astype(np.int64))


def _pixel_separation(image: GridImage, use_max: bool) -> np.ndarray:
    f = image.as_array()
    if use_max:
        best = np.full(f.shape, -1, dtype=np.int64)
        for nv, mask in _shifted(f):
            differ = mask & (nv != f)
            np.maximum(best, np.where(differ, np.abs(nv - f), -1), out=best)
        return np.where(best >= 0, best, 0)
    best = np.full(f.shape, _BIG, dtype=np.int64)
    for nv, mask in _shifted(f):
        differ = mask & (nv != f)
        np.minimum(best, np.where(differ, np.abs(nv - f), _BIG), out=best)
    return np.where(best < _BIG, best, 0)


def min_separation_pixels(image: GridImage) -> ScalarMap:
    """Smallest intensity difference to a differing neighbour (0 if none).

    This follows the prose definition of the minimum separation value: the
    minimum over neighbours of a different value, regardless of whether
    those neighbours are lower or greater.
    """
    return ScalarMap.from_array(_pixel_separation(image, use_max=False))


def max_separation_pixels(image: GridImage) -> ScalarMap:
    """Largest intensity difference to a differing neighbour (0 if none)."""
    return ScalarMap.from_array(_pixel_separation(image, use_max=True))


def _iso_labels(f: np.ndarray) -> np.ndarray:
    """Canonical labels of the maximal iso-value 4-connected zones."""
    h, w = f.shape
    p = np.arange(h * w, dtype=np.int64).reshape(h, w)
    eq_r = f[:, :-1] == f[:, 1:]
    eq_d = f[:-1, :] == f[1:, :]
    eu = np.concatenate([p[:, :-1][eq_r], p[:-1, :][eq_d]])
    ev = np.concatenate([p[:, 1:][eq_r], p[1:, :][eq_d]])
    return component_roots(h * w, eu, ev)


def _zone_separation(image: GridImage, pixel_map: ScalarMap, use_max: bool) -> ScalarMap:
    """Spread the nonzero per-pixel separations over each flat zone."""
    labels = _iso_labels(image.as_array())
    vals = pixel_map.values
    nz = vals > 0
    n = labels.shape[0]
    if use_max:
        acc = np.full(n, -1, dtype=np.int64)
        np.maximum.at(acc, labels[nz], vals[nz])
        out = acc[labels]
        out[out < 0] = 0
    else:
        acc = np.full(n, _BIG, dtype=np.int64)
        np.minimum.at(acc, labels[nz], vals[nz])
        out = acc[labels]
        out[out >= _BIG] = 0
    return ScalarMap(image.width, image.height, out)


def min_separation_flatzones(image: GridImage) -> ScalarMap:
    """Per pixel, the smallest nonzero separation value over its flat zone.

    Equals the smallest threshold at which the pixel's quasi-flat zone grows
    beyond its flat zone; 0 when the image is constant.
    """
    return _zone_separation(image, min_separation_pixels(image), use_max=False)


def max_separation_flatzones(image: GridImage) -> ScalarMap:
    """Per pixel, the largest nonzero separation value over its flat zone."""
    return _zone_separation(image, max_separation_pixels(image), use_max=True)


def _regional_extrema(smap: ScalarMap, maxima: bool, adjacency: int) -> ScalarMap:
    if adjacency != 4:
        raise ValueError("only 4-adjacency is supported")
    f = smap.as_array()
    labels = _iso_labels(f)
    lab2d = labels.reshape(f.shape)
    disqualified = np.zeros(labels.shape[0], dtype=bool)
    for nv, mask in _shifted(f):
        worse = mask & ((nv > f) if maxima else (nv < f))
        if worse.any():
            np.logical_or.at(disqualified, lab2d[worse], True)
    out = (~disqualified)[labels].astype(np.int64)
    return ScalarMap(smap.width, smap.height, out)


def regional_minima(smap: ScalarMap, adjacency: int = 4) -> ScalarMap:
    """Binary mask of plateaus with no strictly lower neighbour."""
    return _regional_extrema(smap, maxima=False, adjacency=adjacency)


def regional_maxima(smap: ScalarMap, adjacency: int = 4) -> ScalarMap:
    """Binary mask of plateaus with no strictly greater neighbour."""
    return _regional_extrema(smap, maxima=True, adjacency=adjacency)
