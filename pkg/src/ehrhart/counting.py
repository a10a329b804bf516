"""Exact lattice-point counts of dilates ``kP`` and of their interiors.

The scan walks the integer points of the bounding box of ``kP`` in all but
the last coordinate; for each such row the admissible range of the last
coordinate is solved exactly from the halfspaces.  Rows are processed in
numpy blocks split along the outermost axis.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import prod

import numpy as np

from .errors import WorkCapExceeded
from .lattice import LatticePolytope

DEFAULT_WORK_CAP = 10**8
WORK_CAP_ENV = "EHRHART_WORK_CAP"
_BLOCK_ROWS = 1 << 17
_INT64_SAFE = 1 << 62


def default_work_cap() -> int:
    env = os.environ.get(WORK_CAP_ENV)
    return int(env) if env else DEFAULT_WORK_CAP


def estimated_work(P: LatticePolytope, k: int) -> int:
    return prod(hi - lo + 1 for lo, hi in P.bounding_box(k))


def _count_block(A, b, first_axis, rest_axes, strict):
    """Count points whose leading coordinates range over one block."""
    n = A.shape[1]
    off = 1 if strict else 0
    axes = [first_axis] + rest_axes
    if n == 1:
        prefix = np.zeros((1, 0), dtype=A.dtype)
    else:
        grids = np.meshgrid(*axes, indexing="ij")
        prefix = np.stack([g.ravel() for g in grids], axis=1)
    rows = prefix.shape[0]
    big = np.iinfo(np.int64).max // 4
    lo = np.full(rows, -big, dtype=A.dtype)
    hi = np.full(rows, big, dtype=A.dtype)
    ok = np.ones(rows, dtype=bool)
    for j in range(A.shape[0]):
        rest = (b[j] - off) - prefix @ A[j, :-1] if n > 1 else np.full(rows, b[j] - off, dtype=A.dtype)
        a = int(A[j, -1])
        if a > 0:
            hi = np.minimum(hi, rest // a)
        elif a < 0:
            lo = np.maximum(lo, -(rest // -a))
        else:
            ok &= rest >= 0
    width = hi - lo + 1
    width = np.where(ok & (width > 0), width, 0)
    return int(width.sum())


def _count(P: LatticePolytope, k: int, strict: bool, work_cap: int | None,
           workers: int = 1) -> int:
    if k == 0:
        return 0 if strict else 1
    cap = default_work_cap() if work_cap is None else work_cap
    est = estimated_work(P, k)
    if est > cap:
        raise WorkCapExceeded(est, cap)
    box = P.bounding_box(k)
    normals = [h.normal for h in P.halfspaces]
    rhs = [k * h.rhs for h in P.halfspaces]
    coord = max(max(abs(lo), abs(hi)) for lo, hi in box) + 1
    bound = max(abs(a) for row in normals for a in row) * coord * P.dim + max(abs(r) for r in rhs) + 1
    dtype = np.int64 if bound < _INT64_SAFE else object
    A = np.array(normals, dtype=dtype)
    b = np.array(rhs, dtype=dtype)
    if P.dim == 1:
        return _count_block(A, b, None, [], strict)

    axes = [np.arange(lo, hi + 1, dtype=np.int64).astype(dtype) for lo, hi in box[:-1]]
    inner = prod(len(ax) for ax in axes[1:])
    step = max(1, _BLOCK_ROWS // max(inner, 1))
    first = axes[0]
    blocks = [first[i:i + step] for i in range(0, len(first), step)]
    if workers > 1 and len(blocks) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda blk: _count_block(A, b, blk, axes[1:], strict), blocks))
    else:
        parts = [_count_block(A, b, blk, axes[1:], strict) for blk in blocks]
    return sum(parts)


def count_points(P: LatticePolytope, k: int = 1, work_cap: int | None = None,
                 workers: int = 1) -> int:
    """``#(kP ∩ Z^n)``."""
    if k < 0:
        raise ValueError("dilation factor must be non-negative")
    return _count(P, k, strict=False, work_cap=work_cap, workers=workers)


def count_interior(P: LatticePolytope, k: int = 1, work_cap: int | None = None,
                   workers: int = 1) -> int:
    """``#(int(kP) ∩ Z^n)`` via strict halfspace tests."""
    if k < 1:
        raise ValueError("interior counts need k >= 1")
    return _count(P, k, strict=True, work_cap=work_cap, workers=workers)


def min_dilate_with_interior(P: LatticePolytope, work_cap: int | None = None) -> int:
    """Smallest ``k >= 1`` such that ``int(kP)`` contains a lattice point."""
    for k in range(1, P.dim + 2):
        if count_interior(P, k, work_cap) > 0:
            return k
    raise AssertionError(f"no interior point up to {P.dim + 1}*P; hull is inconsistent")


@dataclass
class CountTable:
    polytope_label: str
    closed_counts: list[tuple[int, int]] = field(default_factory=list)
    interior_counts: list[tuple[int, int]] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"polytope_label": self.polytope_label,
                "closed_counts": [list(x) for x in self.closed_counts],
                "interior_counts": [list(x) for x in self.interior_counts]}

    def to_csv(self) -> str:
        inner = dict(self.interior_counts)
        lines = ["k,closed,interior"]
        for k, g in self.closed_counts:
            lines.append(f"{k},{g},{inner.get(k, '')}")
        return "\n".join(lines) + "\n"


def count_table(P: LatticePolytope, kmax: int, work_cap: int | None = None) -> CountTable:
    closed = [(k, count_points(P, k, work_cap)) for k in range(kmax + 1)]
    inner = [(k, count_interior(P, k, work_cap)) for k in range(1, kmax + 1)]
    return CountTable(P.label, closed, inner)
