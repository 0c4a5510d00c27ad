"""
Permutations of {1..n} in one-line notation, Bruhat order, bigrassmannian
permutations and essential sets, all by brute force at small n.
"""

from __future__ import annotations

import re
from functools import cache
from itertools import permutations

Permutation = tuple[int, ...]

BRUTE_FORCE_LIMIT = 7


class BoundExceeded(ValueError):
    pass


def make_permutation(word) -> Permutation:
    w = tuple(int(x) for x in word)
    if sorted(w) != list(range(1, len(w) + 1)):
        raise ValueError(f"{w} is not a permutation of 1..{len(w)}")
    return w


def parse_permutation(text: str) -> Permutation:
    m = re.fullmatch(r"\s*\[\s*([\d\s,]*)\]\s*", text)
    if not m:
        raise ValueError(f"not a permutation literal: {text!r}")
    body = m.group(1).strip()
    return make_permutation(int(x) for x in body.split(",")) if body else ()


def format_permutation(w: Permutation) -> str:
    return "[" + ",".join(str(x) for x in w) + "]"


def identity(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def longest(n: int) -> Permutation:
    return tuple(range(n, 0, -1))


def inverse(w: Permutation) -> Permutation:
    out = [0] * len(w)
    for k, x in enumerate(w, start=1):
        out[x - 1] = k
    return tuple(out)


def length(w: Permutation) -> int:
    return sum(1 for p in range(len(w)) for q in range(p + 1, len(w)) if w[p] > w[q])


def descents(w: Permutation) -> list[int]:
    """Positions k (1-based) with w(k) > w(k+1)."""
    return [k + 1 for k in range(len(w) - 1) if w[k] > w[k + 1]]


def is_grassmannian(w: Permutation) -> bool:
    return len(descents(w)) == 1


def is_bigrassmannian(w: Permutation) -> bool:
    return is_grassmannian(w) and is_grassmannian(inverse(w))


def _check_indices(r: int, s: int, t: int, n: int) -> None:
    if not (1 <= t <= r <= n and t <= s <= n and t > r + s - n):
        raise ValueError(f"need 1<=t<=r,s<=n and t>r+s-n, got r={r} s={s} t={t} n={n}")


def bigrassmannian_v(r: int, s: int, t: int, n: int) -> Permutation:
    """v_{r,s,t,n}: unique descent at r, inverse descent at s, v(t) = s+1."""
    _check_indices(r, s, t, n)
    w = (list(range(1, t)) + list(range(s + 1, s + r - t + 2))
         + list(range(t, s + 1)) + list(range(s + r - t + 2, n + 1)))
    v = make_permutation(w)
    if descents(v) != [r] or descents(inverse(v)) != [s] or v[t - 1] != s + 1:
        raise AssertionError(f"constructed {v} fails the bigrassmannian characterization")
    return v


def bigrassmannian_indices(n: int) -> list[tuple[int, int, int, int]]:
    return [(r, s, t, n) for r in range(1, n) for s in range(1, n)
            for t in range(1, min(r, s) + 1) if t > r + s - n]


def _ranks(w: Permutation) -> list[list[int]]:
    # ranks[p][q] = #{k <= p : w(k) >= q}, p, q in 1..n
    n = len(w)
    table = [[0] * (n + 2) for _ in range(n + 1)]
    for p in range(1, n + 1):
        for q in range(1, n + 1):
            table[p][q] = table[p - 1][q] + (1 if w[p - 1] >= q else 0)
    return table


def bruhat_leq(u: Permutation, w: Permutation) -> bool:
    """u <= w in Bruhat order, by the rank-matrix criterion."""
    if len(u) != len(w):
        raise ValueError(f"size mismatch: {len(u)} vs {len(w)}")
    ru, rw = _ranks(u), _ranks(w)
    n = len(u)
    return all(ru[p][q] <= rw[p][q] for p in range(1, n + 1) for q in range(1, n + 1))


def lower_covers(w: Permutation) -> list[Permutation]:
    """Permutations covered by w: swap w(p) > w(q) with no value between them in between."""
    n = len(w)
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            if w[p] > w[q] and not any(w[q] < w[k] < w[p] for k in range(p + 1, q)):
                x = list(w)
                x[p], x[q] = x[q], x[p]
                out.append(tuple(x))
    return out


def upper_covers(w: Permutation) -> list[Permutation]:
    n = len(w)
    out = []
    for p in range(n):
        for q in range(p + 1, n):
            if w[p] < w[q] and not any(w[p] < w[k] < w[q] for k in range(p + 1, q)):
                x = list(w)
                x[p], x[q] = x[q], x[p]
                out.append(tuple(x))
    return out


@cache
def all_permutations(n: int) -> tuple[Permutation, ...]:
    return tuple(permutations(range(1, n + 1)))


def _bound(n: int, bound: int) -> None:
    if n > bound:
        raise BoundExceeded(f"n={n} exceeds the brute-force bound {bound}")


def essential_set(w: Permutation, bound: int = BRUTE_FORCE_LIMIT) -> list[Permutation]:
    """Minimal elements of {u : u not <= w}, sorted."""
    n = len(w)
    _bound(n, bound)
    rw = _ranks(w)

    def below(u):
        ru = _ranks(u)
        return all(ru[p][q] <= rw[p][q] for p in range(1, n + 1) for q in range(1, n + 1))

    # the complement of [e, w] is an up-set, so u is minimal in it iff
    # every element u covers lies below w
    out = []
    for u in all_permutations(n):
        if not below(u) and all(below(x) for x in lower_covers(u)):
            out.append(u)
    return sorted(out)


def find_w_for_v(v: Permutation, n: int | None = None, bound: int = BRUTE_FORCE_LIMIT) -> list[Permutation]:
    """
    All w with essential set {v}, each verified by the set equality
    {u : u not <= w} = {u : u >= v}.  There is at most one such w: the
    unique maximum of {u : v not <= u}, when it exists.
    """
    n = len(v) if n is None else n
    if len(v) != n:
        raise ValueError(f"v has length {len(v)}, expected {n}")
    _bound(n, bound)
    perms = all_permutations(n)
    above_v = {u for u in perms if bruhat_leq(v, u)}
    rest = [u for u in perms if u not in above_v]
    rest_set = set(rest)
    tops = [u for u in rest if not any(x in rest_set for x in upper_covers(u))]
    out = []
    for w in tops:
        if {u for u in perms if not bruhat_leq(u, w)} == above_v:
            out.append(w)
    return sorted(out)


def bruhat_closure_leq(n: int) -> set[tuple[Permutation, Permutation]]:
    """Bruhat order on S_n as the closure of u < u.t whenever the transposition t raises length.

    Independent of the rank criterion; used as a test oracle.
    """
    perms = all_permutations(n)
    step = {}
    for u in perms:
        lu = length(u)
        ups = []
        for p in range(n):
            for q in range(p + 1, n):
                x = list(u)
                x[p], x[q] = x[q], x[p]
                x = tuple(x)
                if length(x) > lu:
                    ups.append(x)
        step[u] = ups
    rel = set()
    for u in perms:
        seen = {u}
        stack = [u]
        while stack:
            for y in step[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        rel.update((u, y) for y in seen)
    return rel


def w_formula(r: int, s: int, t: int, n: int) -> Permutation:
    """
    The closed-form w_{r,s,t,n} whose essential set is {v_{r,s,t,n}}:
    n..(n-r+t+1), s..(s-t+1), (n-r+t)..(s+1), (s-t)..1, each run decreasing.
    """
    _check_indices(r, s, t, n)
    return make_permutation(list(range(n, n - r + t, -1)) + list(range(s, s - t, -1))
                            + list(range(n - r + t, s, -1)) + list(range(s - t, 0, -1)))
