"""
Littlewood-Richardson coefficients.

`lr_coefficient` counts LR skew tableaux (semistandard fillings of nu/lam with
content mu whose reverse reading word is a lattice word).  `lr_via_pictures`
counts pictures between nu/lam and mu by raw bijection search and is only
meant as an independent check on small instances.
"""

from __future__ import annotations

from functools import lru_cache

from .partitions import Partition, contains, order_key, part, size

PICTURE_LIMIT = 10


class InstanceTooLarge(ValueError):
    """Raised when a brute-force routine is asked for more than its guard allows."""


def lr_coefficient(lam: Partition, mu: Partition, nu: Partition) -> int:
    """c_{lam,mu}^{nu}, the coefficient of s_nu in s_lam * s_mu."""
    if size(nu) != size(lam) + size(mu):
        return 0
    if not contains(nu, lam) or not contains(nu, mu):
        return 0
    # commutativity: canonical key, inner shape is the larger one
    if order_key(lam) < order_key(mu):
        lam, mu = mu, lam
    return _lr_cached(tuple(lam), tuple(mu), tuple(nu))


def cache_clear() -> None:
    _lr_cached.cache_clear()


def cache_info():
    return _lr_cached.cache_info()


@lru_cache(maxsize=None)
def _lr_cached(lam: Partition, mu: Partition, nu: Partition) -> int:
    if not mu:
        return 1 if lam == nu else 0
    return _count_lr_tableaux(lam, mu, nu)


def _count_lr_tableaux(lam: Partition, mu: Partition, nu: Partition) -> int:
    # cells of nu/lam in reverse reading order: rows top-down, right to left
    cells = [(r, c) for r in range(len(nu)) for c in range(nu[r] - 1, part(lam, r) - 1, -1)]
    filling: dict[tuple[int, int], int] = {}
    counts = [0] * (len(mu) + 1)  # counts[v] for v = 1..len(mu)
    n_cells = len(cells)

    def place(k: int) -> int:
        if k == n_cells:
            return 1
        r, c = cells[k]
        lo = 1
        hi = len(mu)
        above = filling.get((r - 1, c))
        if above is not None:
            lo = above + 1
        right = filling.get((r, c + 1))
        if right is not None:
            hi = min(hi, right)
        # a value in row r (0-based) of an LR tableau never exceeds r + 1
        hi = min(hi, r + 1)
        total = 0
        for v in range(lo, hi + 1):
            if counts[v] >= mu[v - 1]:
                continue
            if v > 1 and counts[v] + 1 > counts[v - 1]:
                continue
            counts[v] += 1
            filling[(r, c)] = v
            total += place(k + 1)
            del filling[(r, c)]
            counts[v] -= 1
        return total

    return place(0)


def _skew_cells(outer: Partition, inner: Partition) -> list[tuple[int, int]]:
    """Cells of outer/inner listed in reverse row numbering order."""
    return [(r, c) for r in range(len(outer)) for c in range(outer[r] - 1, part(inner, r) - 1, -1)]


def _northwest(x: tuple[int, int], y: tuple[int, int]) -> bool:
    return x != y and x[0] <= y[0] and x[1] <= y[1]


def lr_via_pictures(lam: Partition, mu: Partition, nu: Partition, limit: int = PICTURE_LIMIT) -> int:
    """Number of pictures between nu/lam and mu.

    A picture is a bijection f between the two cell sets such that whenever
    x is weakly north-west of y in one diagram, f(x) precedes f(y) in the
    reverse row numbering of the other (checked in both directions).
    """
    if size(nu) != size(lam) + size(mu) or not contains(nu, lam):
        return 0
    if size(mu) > limit:
        raise InstanceTooLarge(f"picture search on {size(mu)} cells exceeds limit {limit}")
    src = _skew_cells(nu, lam)
    dst = _skew_cells(mu, ())
    # position in reverse row numbering
    src_pos = {cell: k for k, cell in enumerate(src)}
    dst_pos = {cell: k for k, cell in enumerate(dst)}
    image: list[tuple[int, int]] = []
    used: set[tuple[int, int]] = set()

    def compatible(x, fx) -> bool:
        for y, fy in zip(src, image):
            if _northwest(y, x) and not dst_pos[fy] < dst_pos[fx]:
                return False
            if _northwest(x, y) and not dst_pos[fx] < dst_pos[fy]:
                return False
            if _northwest(fy, fx) and not src_pos[y] < src_pos[x]:
                return False
            if _northwest(fx, fy) and not src_pos[x] < src_pos[y]:
                return False
        return True

    def extend(k: int) -> int:
        if k == len(src):
            return 1
        x = src[k]
        total = 0
        for fx in dst:
            if fx in used or not compatible(x, fx):
                continue
            used.add(fx)
            image.append(fx)
            total += extend(k + 1)
            image.pop()
            used.discard(fx)
        return total

    return extend(0)


def _outer_shapes(lam: Partition, mu: Partition, box=None) -> list[Partition]:
    """Candidates nu with lam, mu inside nu and |nu| = |lam| + |mu|."""
    total = size(lam) + size(mu)
    max_rows = len(lam) + len(mu)
    max_cols = part(lam, 0) + part(mu, 0)
    if box is not None:
        max_rows = min(max_rows, box.rows)
        max_cols = min(max_cols, box.cols)
    out: list[Partition] = []

    def rec(k: int, remaining: int, cap: int, acc: tuple[int, ...]):
        if remaining == 0:
            if all(part(acc, t) >= max(part(lam, t), part(mu, t)) for t in range(k, max(len(lam), len(mu)))):
                out.append(acc)
            return
        if k >= max_rows:
            return
        floor = max(part(lam, k), part(mu, k))
        for p in range(min(cap, remaining), max(floor, 1) - 1, -1):
            rec(k + 1, remaining - p, p, acc + (p,))

    rec(0, total, max_cols, ())
    out.sort(key=order_key)
    return out


def schur_product_expand(lam: Partition, mu: Partition, box=None) -> dict[Partition, int]:
    """s_lam * s_mu as {nu: c}, optionally keeping only nu inside `box`."""
    out: dict[Partition, int] = {}
    for nu in _outer_shapes(lam, mu, box):
        c = lr_coefficient(lam, mu, nu)
        if c:
            out[nu] = c
    return out
