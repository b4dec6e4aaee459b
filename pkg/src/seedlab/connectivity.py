"""Connected-component labeling of membership masks and the disconnectivity rate."""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .raster import Viewport


@dataclass(frozen=True, eq=False)
class LabelField:
    labels: np.ndarray
    component_sizes: tuple[int, ...]
    connectivity_kind: int

    @property
    def component_count(self) -> int:
        return len(self.component_sizes)

    @property
    def member_pixels(self) -> int:
        return int(sum(self.component_sizes))

    def mask(self) -> np.ndarray:
        return self.labels > 0


@dataclass(frozen=True)
class ConnectivityRecord:
    seed: complex
    component_count: int
    member_pixels: int
    largest_fraction: float
    disconnectivity: float
    empty: bool


@numba.njit(nogil=True, cache=True)
def _find(parent, x):
    root = x
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


@numba.njit(nogil=True, cache=True)
def _union(parent, a, b):
    ra = _find(parent, a)
    rb = _find(parent, b)
    if ra < rb:
        parent[rb] = ra
    elif rb < ra:
        parent[ra] = rb


@numba.njit(nogil=True, cache=True)
def _two_pass(mask, eight):
    rows, cols = mask.shape
    labels = np.zeros((rows, cols), dtype=np.int64)
    # provisional labels are at most one per member pixel
    parent = np.empty(rows * cols + 1, dtype=np.int64)
    nxt = 1
    for r in range(rows):
        for c in range(cols):
            if not mask[r, c]:
                continue
            # already-visited neighbours: W, N, and for 8-connectivity NW, NE
            best = 0
            if c > 0 and labels[r, c - 1] > 0:
                best = labels[r, c - 1]
            if r > 0:
                if labels[r - 1, c] > 0:
                    if best == 0:
                        best = labels[r - 1, c]
                    else:
                        _union(parent, best, labels[r - 1, c])
                if eight:
                    if c > 0 and labels[r - 1, c - 1] > 0:
                        if best == 0:
                            best = labels[r - 1, c - 1]
                        else:
                            _union(parent, best, labels[r - 1, c - 1])
                    if c + 1 < cols and labels[r - 1, c + 1] > 0:
                        if best == 0:
                            best = labels[r - 1, c + 1]
                        else:
                            _union(parent, best, labels[r - 1, c + 1])
            if best == 0:
                parent[nxt] = nxt
                best = nxt
                nxt += 1
            labels[r, c] = best

    # second pass: dense ids in row-major order of first encounter
    final = np.zeros(nxt, dtype=np.int64)
    sizes = np.zeros(nxt, dtype=np.int64)
    k = 0
    for r in range(rows):
        for c in range(cols):
            lab = labels[r, c]
            if lab == 0:
                continue
            root = _find(parent, lab)
            if final[root] == 0:
                k += 1
                final[root] = k
            fid = final[root]
            labels[r, c] = fid
            sizes[fid] += 1
    return labels, sizes[1 : k + 1]


def label_components(mask, connectivity_kind: int = 8, min_size: int = 0) -> LabelField:
    """Label the true pixels of *mask* under 4- or 8-adjacency.

    ``min_size`` drops components smaller than that many pixels before the
    ids are made dense; 0 keeps everything.
    """
    if connectivity_kind not in (4, 8):
        raise ValueError("connectivity_kind must be 4 or 8")
    mask = np.asarray(mask, dtype=np.bool_)
    if mask.ndim != 2 or mask.size == 0:
        raise ValueError("mask must be a non-empty 2-D grid")
    labels, sizes = _two_pass(np.ascontiguousarray(mask), connectivity_kind == 8)
    if min_size > 1 and len(sizes):
        keep = sizes >= min_size
        remap = np.zeros(len(sizes) + 1, dtype=np.int64)
        remap[1:][keep] = np.arange(1, int(keep.sum()) + 1)
        labels = remap[labels]
        sizes = sizes[keep]
    labels.setflags(write=False)
    return LabelField(labels, tuple(int(s) for s in sizes), connectivity_kind)


def disconnectivity_rate(labels: LabelField, seed: complex = 0j) -> ConnectivityRecord:
    """One minus the share of member pixels held by the largest component.

    An empty set reports 0 with ``empty=True`` so it is never mistaken for a
    connected one.
    """
    sizes = labels.component_sizes
    members = sum(sizes)
    if members == 0:
        return ConnectivityRecord(complex(seed), 0, 0, 1.0, 0.0, True)
    largest = max(sizes) / members
    return ConnectivityRecord(complex(seed), len(sizes), int(members), largest, 1.0 - largest, False)


@dataclass(frozen=True)
class ComponentStats:
    id: int
    size_pixels: int
    area_plane_units: float
    centroid: complex
    # (re_min, re_max, im_min, im_max) of the member pixel cells
    bbox: tuple[float, float, float, float]


def component_stats(labels: LabelField, viewport: Viewport) -> list[ComponentStats]:
    lab = labels.labels
    if lab.shape != viewport.shape:
        raise ValueError(f"labels shape {lab.shape} does not match viewport {viewport.shape}")
    k = labels.component_count
    if k == 0:
        return []
    rows, cols = np.nonzero(lab)
    ids = lab[rows, cols]
    re = viewport.column_coords()[cols]
    im = viewport.row_coords()[rows]
    counts = np.bincount(ids, minlength=k + 1)[1:]
    cre = np.bincount(ids, weights=re, minlength=k + 1)[1:] / counts
    cim = np.bincount(ids, weights=im, minlength=k + 1)[1:] / counts

    def reduce(fn, values, init):
        out = np.full(k + 1, init)
        fn.at(out, ids, values)
        return out[1:]

    hw, hh = viewport.pixel_width / 2, viewport.pixel_height / 2
    re_lo = reduce(np.minimum, re, np.inf) - hw
    re_hi = reduce(np.maximum, re, -np.inf) + hw
    im_lo = reduce(np.minimum, im, np.inf) - hh
    im_hi = reduce(np.maximum, im, -np.inf) + hh
    stats = [
        ComponentStats(
            id=i + 1,
            size_pixels=int(counts[i]),
            area_plane_units=float(counts[i]) * viewport.pixel_area,
            centroid=complex(cre[i], cim[i]),
            bbox=(float(re_lo[i]), float(re_hi[i]), float(im_lo[i]), float(im_hi[i])),
        )
        for i in range(k)
    ]
    stats.sort(key=lambda s: (-s.size_pixels, s.id))
    return stats
