"""Integer disk instances and their intersection graphs.

Disks are closed, so tangent disks intersect. All comparisons are exact
integer arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from diskoct import _kernels
from diskoct.graph import Graph


@dataclass(frozen=True)
class Disk:
    id: int
    cx: int
    cy: int
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise ValueError(f"disk {self.id}: radius must be >= 1, got {self.r}")


@dataclass(frozen=True)
class DiskInstance:
    disks: tuple[Disk, ...]

    def __post_init__(self):
        ids = [d.id for d in self.disks]
        if sorted(ids) != list(range(len(ids))):
            raise ValueError("disk ids must be exactly 0..n-1")
        # keep disks in id order so vertex i is disk i
        object.__setattr__(self, "disks", tuple(sorted(self.disks, key=lambda d: d.id)))

    def __len__(self) -> int:
        return len(self.disks)

    @property
    def bbox(self) -> tuple[int, int, int, int] | None:
        """(xmin, ymin, xmax, ymax) of the union of disks, None when empty."""
        if not self.disks:
            return None
        return (
            min(d.cx - d.r for d in self.disks),
            min(d.cy - d.r for d in self.disks),
            max(d.cx + d.r for d in self.disks),
            max(d.cy + d.r for d in self.disks),
        )

    def arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        cx = np.array([d.cx for d in self.disks], dtype=np.int64)
        cy = np.array([d.cy for d in self.disks], dtype=np.int64)
        r = np.array([d.r for d in self.disks], dtype=np.int64)
        return cx, cy, r


def disks_intersect(d1: Disk, d2: Disk) -> bool:
    # python ints are unbounded, so this never overflows
    dx = int(d1.cx) - int(d2.cx)
    dy = int(d1.cy) - int(d2.cy)
    s = int(d1.r) + int(d2.r)
    return dx * dx + dy * dy <= s * s


def build_disk_graph(inst: DiskInstance) -> Graph:
    n = len(inst)
    if n == 0:
        return Graph.empty(0)
    cx, cy, r = inst.arrays()
    bound = max(np.abs(cx).max(), np.abs(cy).max(), r.max())
    if bound < _kernels.SAFE_COORD:
        us, vs = _kernels.disk_edges(cx, cy, r)
    else:
        pairs = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if disks_intersect(inst.disks[i], inst.disks[j])
        ]
        arr = np.array(pairs, dtype=np.int64).reshape(-1, 2)
        us, vs = arr[:, 0], arr[:, 1]
    return Graph._from_pairs(n, us, vs)


def generate_random_instance(n: int, r_min: int, r_max: int, side: int, seed: int) -> DiskInstance:
    """``n`` disks with centres uniform on the grid [0, side]^2 and radii uniform in [r_min, r_max]."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if not 1 <= r_min <= r_max:
        raise ValueError(f"need 1 <= r_min <= r_max, got {r_min}..{r_max}")
    if side < 1:
        raise ValueError(f"side must be >= 1, got {side}")
    rng = np.random.default_rng(seed)
    xs = rng.integers(0, side, size=n, endpoint=True)
    ys = rng.integers(0, side, size=n, endpoint=True)
    rs = rng.integers(r_min, r_max, size=n, endpoint=True)
    return DiskInstance(tuple(Disk(i, int(x), int(y), int(r)) for i, (x, y, r) in enumerate(zip(xs, ys, rs))))


def parse_disks(text: str) -> DiskInstance:
    disks = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'id cx cy r', got {raw!r}")
        disks.append(Disk(*map(int, parts)))
    return DiskInstance(tuple(disks))


def format_disks(inst: DiskInstance) -> str:
    lines = ["# id cx cy r"]
    lines.extend(f"{d.id} {d.cx} {d.cy} {d.r}" for d in inst.disks)
    return "\n".join(lines) + "\n"


def read_disks(path) -> DiskInstance:
    with open(path) as fh:
        return parse_disks(fh.read())


def write_disks(inst: DiskInstance, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_disks(inst))


def from_tuples(rows: Sequence[tuple[int, int, int]]) -> DiskInstance:
    """Build an instance from ``(cx, cy, r)`` rows, numbering disks in order."""
    return DiskInstance(tuple(Disk(i, cx, cy, r) for i, (cx, cy, r) in enumerate(rows)))
