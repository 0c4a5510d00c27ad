"""
Linear systems attached to the Schur generators (i^j, lam), lam inside b^a,
of a basic ideal in the Grassmannian cohomology ring, and the machinery that
shows those generators admit no syzygy.

The parameter pack is a ValidTuple (n, r, i, j, a, b, N).  The quotient ring
is the Schur span of partitions inside the box with r rows of length n - r.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Iterable, Sequence

from . import linalg
from .lr import lr_coefficient
from .partitions import (
    Box,
    EMPTY,
    Partition,
    conjugate,
    contains,
    format_partition,
    order_key,
    part,
    partitions_in_box,
    size,
    stack_rectangle,
)
from .symfun import (
    FormalTensor,
    SchurElement,
    TensorElement,
    cp_map,
    expand_formal_tensor,
    multiply,
)

MAX_COLS = 8
MAX_CELLS = 40


class InvalidTuple(ValueError):
    def __init__(self, violations: list[str]):
        self.violations = violations
        super().__init__("invalid tuple: " + ", ".join(violations))


class PreconditionError(ValueError):
    pass


class GuardExceeded(RuntimeError):
    def __init__(self, message: str, measured: dict):
        self.measured = measured
        super().__init__(message)


# ----------------------------------------------------------------------------
# tuples and bigrassmannian parameters


@dataclass(frozen=True)
class ValidTuple:
    n: int
    r: int
    i: int
    j: int
    a: int
    b: int
    N: int

    @property
    def box(self) -> Box:
        """The ambient rectangle (n-r)^r."""
        return Box(self.r, self.n - self.r)

    @property
    def blue_box(self) -> Box:
        """b^a, where the lower part nu_B lives."""
        return Box(self.a, self.b)

    @property
    def red_box(self) -> Box:
        """(n-r-i)^j, where the right strip nu_R lives."""
        return Box(self.j, self.n - self.r - self.i)

    @property
    def rectangle(self) -> Partition:
        return (self.i,) * self.j

    def as_tuple(self) -> tuple[int, ...]:
        return (self.n, self.r, self.i, self.j, self.a, self.b, self.N)

    def __str__(self):
        return ",".join(str(x) for x in self.as_tuple())


def tuple_violations(n, r, i, j, a, b, N) -> list[str]:
    """Names of every violated validity constraint (empty when valid)."""
    out = [f"{name}>=1" for name, v in zip("n r i j a b N".split(), (n, r, i, j, a, b, N)) if v < 1]
    if r >= n:
        out.append("r<n")
    if a + j > r:
        out.append("a+j<=r")
    if a + i > n - r:
        out.append("a+i<=n-r")
    if b > i:
        out.append("b<=i")
    if b > j:
        out.append("b<=j")
    if N > a * b:
        out.append("N<=ab")
    return out


def make_valid_tuple(n, r, i, j, a, b, N) -> ValidTuple:
    bad = tuple_violations(n, r, i, j, a, b, N)
    if bad:
        raise InvalidTuple(bad)
    return ValidTuple(n, r, i, j, a, b, N)


def valid_tuples(max_cols: int, max_rows: int, max_N: int) -> list[ValidTuple]:
    """Every valid tuple with n - r <= max_cols, r <= max_rows, N <= max_N."""
    out = []
    for r in range(1, max_rows + 1):
        for cols in range(1, max_cols + 1):
            n = r + cols
            for i in range(1, cols + 1):
                for a in range(1, cols - i + 1):
                    for j in range(1, r - a + 1):
                        for b in range(1, min(i, j) + 1):
                            for N in range(1, min(a * b, max_N) + 1):
                                out.append(ValidTuple(n, r, i, j, a, b, N))
    return out


def check_bigrassmannian_indices(r: int, s: int, t: int, n: int) -> None:
    if not (1 <= t <= r <= n and t <= s <= n and t > r + s - n):
        raise InvalidTuple([f"need 1<=t<=r,s<=n and t>r+s-n, got r={r} s={s} t={t} n={n}"])


def params_from_bigrassmannian(r: int, s: int, t: int, n: int) -> tuple[int, int, int, int]:
    """(i, j, a, b) for the bigrassmannian permutation v_{r,s,t,n}."""
    check_bigrassmannian_indices(r, s, t, n)
    i = s - t + 1
    j = r - t + 1
    return i, j, min(n - r - i, r - j), min(i, j)


def generator_set(r: int, s: int, t: int, n: int) -> list[Partition]:
    """The generators (i^j, lam) for lam inside b^a, in box order of lam."""
    i, j, a, b = params_from_bigrassmannian(r, s, t, n)
    if a < 1:
        return [(i,) * j]
    return [stack_rectangle(i, j, lam) for lam in partitions_in_box(Box(a, b))]


def generator_count(r: int, s: int, t: int, n: int) -> int:
    i, j, a, b = params_from_bigrassmannian(r, s, t, n)
    return comb(a + b, a) if a >= 1 else 1


# ----------------------------------------------------------------------------
# allowable and decomposable partitions


@dataclass(frozen=True)
class Decomposition:
    nu: Partition
    nuB: Partition
    nuR: Partition

    @property
    def tall(self) -> bool:
        return not self.nuR


def allowable_partitions(phi: ValidTuple) -> list[Partition]:
    rect = phi.rectangle
    return [nu for nu in partitions_in_box(phi.box, phi.i * phi.j + phi.N) if contains(nu, rect)]


def is_allowable(phi: ValidTuple, nu: Partition) -> bool:
    return phi.box.fits(nu) and contains(nu, phi.rectangle) and size(nu) == phi.i * phi.j + phi.N


def decompose(phi: ValidTuple, nu: Partition) -> Decomposition | None:
    """Split nu into its right strip and lower block, or None if not decomposable."""
    nu = tuple(nu)
    if not is_allowable(phi, nu):
        raise PreconditionError(f"{format_partition(nu)} is not allowable for {phi}")
    if part(nu, phi.j) > phi.b or len(nu) > phi.j + phi.a:
        return None
    nuR = tuple(p - phi.i for p in nu[: phi.j] if p > phi.i)
    nuB = nu[phi.j:]
    return Decomposition(nu, nuB, nuR)


def decomposable_partitions(phi: ValidTuple) -> list[Decomposition]:
    out = []
    for nu in allowable_partitions(phi):
        d = decompose(phi, nu)
        if d is not None:
            out.append(d)
    return out


def _require_decomposition(phi: ValidTuple, nu: Partition) -> Decomposition:
    try:
        d = decompose(phi, nu)
    except PreconditionError:
        d = None
    if d is None:
        raise PreconditionError(f"{format_partition(nu)} is not decomposable for {phi}")
    return d


# ----------------------------------------------------------------------------
# linear forms in the variables A_{lam,theta}

Variable = tuple[Partition, Partition]


def variables(phi: ValidTuple) -> list[Variable]:
    """Column index: (lam, theta) with lam in b^a, |lam| < N, theta in the box, |theta| = N - |lam|."""
    out = []
    for lam in partitions_in_box(phi.blue_box):
        if size(lam) >= phi.N:
            continue
        for theta in partitions_in_box(phi.box, phi.N - size(lam)):
            out.append((lam, theta))
    return out


def format_variable(var: Variable) -> str:
    lam, theta = var
    return f"A_{{{format_partition(lam)},{format_partition(theta)}}}"


@dataclass
class LinearForm:
    coeffs: dict[Variable, int]
    label: Partition
    tall: bool
    phi: ValidTuple | None = None

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        items = sorted(self.coeffs.items(), key=lambda kv: (order_key(kv[0][0]), order_key(kv[0][1])))
        out = []
        for k, (var, c) in enumerate(items):
            body = format_variable(var) if abs(c) == 1 else f"{abs(c)}{format_variable(var)}"
            out.append(("-" if c < 0 else "") + body if k == 0 else (" - " if c < 0 else " + ") + body)
        return "".join(out)

    def to_tensor(self, box: Box) -> TensorElement:
        """Image under A_{lam,theta} -> s̄_lam (x) s̄_theta."""
        return TensorElement(dict(self.coeffs), box)


def linear_form(phi: ValidTuple, nu: Partition) -> LinearForm:
    d = _require_decomposition(phi, nu)
    nu = d.nu
    coeffs: dict[Variable, int] = {}
    for lam in partitions_in_box(phi.blue_box):
        if size(lam) >= phi.N:
            continue
        top = stack_rectangle(phi.i, phi.j, lam)
        if not contains(nu, top):
            continue
        for theta in partitions_in_box(phi.box, phi.N - size(lam)):
            if not contains(nu, theta):
                continue
            c = lr_coefficient(top, theta, nu)
            if c:
                coeffs[(lam, theta)] = c
    return LinearForm(coeffs, nu, d.tall, phi)


def tensor_of_form(phi: ValidTuple, nu: Partition) -> TensorElement:
    """CP(s̄_{nu_B} (x) s̄_{nu_R}) expanded in the quotient."""
    d = _require_decomposition(phi, nu)
    return expand_formal_tensor(cp_map(d.nuB, [d.nuR] if d.nuR else [], phi.box))


# ----------------------------------------------------------------------------
# the CP elimination algorithm

Chooser = Callable[[list[tuple[tuple, int]]], tuple]


def _candidates(xi: FormalTensor) -> list[tuple[tuple, int]]:
    cands = [(key, c) for key, c in xi.terms.items() if key[0]]
    cands.sort(key=lambda kv: (-size(kv[0][0]), tuple(-p for p in kv[0][0]),
                               len(kv[0][1]), tuple(order_key(m) for m in kv[0][1])))
    return cands


def default_chooser(cands):
    """Largest left factor first; ties by reverse-lex left, then right multiset."""
    return cands[0][0]


def random_chooser(seed: int) -> Chooser:
    rng = random.Random(seed)
    return lambda cands: rng.choice(cands)[0]


def scripted_chooser(script: Sequence[tuple], fallback: Chooser = default_chooser) -> Chooser:
    """Take the given (left, rights) keys in order, then defer to `fallback`."""
    queue = [(tuple(l), tuple(sorted((tuple(m) for m in rs), key=order_key))) for l, rs in script]

    def choose(cands):
        if queue:
            want = queue.pop(0)
            if not any(k == want for k, _ in cands):
                raise PreconditionError(f"scripted term {want} is not present")
            return want
        return fallback(cands)

    return choose


def left_size_measure(xi: FormalTensor) -> Counter:
    return Counter(size(lam) for lam, _ in xi.terms if lam)


def multiset_decreases(old: Counter, new: Counter) -> bool:
    """Strict decrease in the multiset extension of < on sizes."""
    if old == new:
        return False
    grew = [x for x in set(new) | set(old) if new[x] > old[x]]
    shrank = [y for y in set(new) | set(old) if old[y] > new[y]]
    return all(any(y > x for y in shrank) for x in grew)


@dataclass
class ReductionStep:
    index: int
    chosen: tuple
    gamma: int
    state: FormalTensor


@dataclass
class Reduction:
    phi: ValidTuple
    nu: Partition
    nuB: Partition
    initial: FormalTensor
    steps: list[ReductionStep]
    final: FormalTensor
    expanded: TensorElement
    closed_form: TensorElement

    @property
    def matches_closed_form(self) -> bool:
        return self.expanded == self.closed_form


def run_algorithm(nuB: Partition, box: Box, chooser: Chooser | None = None,
                  max_steps: int = 1_000_000) -> tuple[FormalTensor, list[ReductionStep]]:
    """Eliminate every term with a nonempty left factor, starting from CP(s̄_{nuB} (x) 1)."""
    chooser = chooser or default_chooser
    xi = cp_map(nuB, [], box)
    steps = [ReductionStep(0, (), 0, xi)]
    measure = left_size_measure(xi)
    for k in range(1, max_steps + 1):
        cands = _candidates(xi)
        if not cands:
            return xi, steps
        key = chooser(cands)
        gamma = xi.terms[key]
        xi = xi - cp_map(key[0], key[1], box) * gamma
        new_measure = left_size_measure(xi)
        if not multiset_decreases(measure, new_measure):
            raise RuntimeError(f"termination measure failed to decrease at step {k}")
        measure = new_measure
        steps.append(ReductionStep(k, key, gamma, xi))
    raise RuntimeError(f"no termination after {max_steps} steps")


def closed_form(nuB: Partition, box: Box) -> TensorElement:
    """(-1)^{|nuB|+1} (1 (x) s̄_{nuB'})."""
    sign = (-1) ** (size(nuB) + 1)
    return TensorElement({(EMPTY, conjugate(nuB)): sign} if box.fits(conjugate(nuB)) else {}, box)


def reduce_tall(phi: ValidTuple, nu: Partition, chooser: Chooser | None = None) -> Reduction:
    d = _require_decomposition(phi, nu)
    if not d.tall:
        raise PreconditionError(f"{format_partition(d.nu)} is wide, not tall")
    final, steps = run_algorithm(d.nuB, phi.box, chooser)
    return Reduction(phi, d.nu, d.nuB, steps[0].state, steps[1:], final,
                     expand_formal_tensor(final), closed_form(d.nuB, phi.box))


# ----------------------------------------------------------------------------
# the decomposable system and the span certificate


@dataclass
class System:
    phi: ValidTuple
    variables: list[Variable]
    forms: list[LinearForm]

    @property
    def index(self) -> dict[Variable, int]:
        return {v: k for k, v in enumerate(self.variables)}

    def rows(self, forms: Iterable[LinearForm] | None = None) -> list[dict[int, int]]:
        idx = self.index
        return [{idx[v]: c for v, c in f.coeffs.items()} for f in (self.forms if forms is None else forms)]

    @property
    def tall(self) -> list[LinearForm]:
        return [f for f in self.forms if f.tall]

    @property
    def wide(self) -> list[LinearForm]:
        return [f for f in self.forms if not f.tall]


def _pmap(fn, items, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def build_system(phi: ValidTuple, threads: int = 1) -> System:
    decs = decomposable_partitions(phi)
    forms = _pmap(lambda d: linear_form(phi, d.nu), decs, threads)
    return System(phi, variables(phi), forms)


def format_system(system: System) -> str:
    """Text listing of the decomposable equations, tall block first."""
    lines = [f"decomposable equations for phi=({system.phi})"]
    for title, forms in (("tall", system.tall), ("wide", system.wide)):
        lines.append(f"{title} equations ({len(forms)}):")
        for f in forms:
            lines.append(f"  nu={format_partition(f.label)}: {f.render()}")
    return "\n".join(lines)


@dataclass
class SpanCertificate:
    phi: ValidTuple
    verdict: bool
    wide_labels: list[Partition]
    certificates: dict[Partition, linalg.SpanResult] = field(default_factory=dict)


def tall_in_wide_span(phi: ValidTuple, system: System | None = None) -> SpanCertificate:
    """
    Check every tall row against the rational span of the wide rows.

    Each returned coefficient vector is re-multiplied and compared to the
    tall row before being accepted.
    """
    system = system or build_system(phi)
    ncols = len(system.variables)
    wide = system.wide
    wide_rows = system.rows(wide)
    ech = linalg.row_reduce(wide_rows, ncols)
    cert = SpanCertificate(phi, True, [f.label for f in wide])
    for f, row in zip(system.tall, system.rows(system.tall)):
        res = linalg.in_row_span(wide_rows, row, ncols, echelon=ech)
        if res.in_span:
            if linalg.combine(wide_rows, res.coefficients, ncols) != linalg.dense(row, ncols):
                raise RuntimeError(f"certificate for {f.label} does not recombine")
        else:
            cert.verdict = False
        cert.certificates[f.label] = res
    return cert


# ----------------------------------------------------------------------------
# blow-up and restriction


def blowup_tuple(phi: ValidTuple, q: int) -> ValidTuple:
    if q < 0:
        raise ValueError("q must be nonnegative")
    return make_valid_tuple(4 ** q * phi.n, 2 ** q * phi.r, phi.i, 2 ** q * phi.j, phi.a, phi.b, phi.N)


def minimal_blowup(phi: ValidTuple) -> int:
    """Smallest q with N <= min(2^q j, 4^q n - 2^q r - i)."""
    q = 0
    while phi.N > min(2 ** q * phi.j, 4 ** q * phi.n - 2 ** q * phi.r - phi.i):
        q += 1
    return q


def blowup_of(phi: ValidTuple, phi_hat: ValidTuple) -> int | None:
    """The q with phi_hat = blowup_tuple(phi, q), if any."""
    if (phi.i, phi.a, phi.b, phi.N) != (phi_hat.i, phi_hat.a, phi_hat.b, phi_hat.N):
        return None
    q = 0
    while 2 ** q * phi.j <= phi_hat.j:
        if (4 ** q * phi.n, 2 ** q * phi.r, 2 ** q * phi.j) == (phi_hat.n, phi_hat.r, phi_hat.j):
            return q
        q += 1
    return None


def lift_partition(phi_hat: ValidTuple, d: Decomposition) -> Partition:
    """The nu-hat for phi_hat with the same lower block and right strip."""
    top = tuple(phi_hat.i + part(d.nuR, k) for k in range(phi_hat.j))
    return top + tuple(d.nuB)


def restrict_form(f: LinearForm, phi: ValidTuple) -> LinearForm:
    """Zero the variables outside b^a x (n-r-i)^j and re-index to phi's columns."""
    if f.phi is None or blowup_of(phi, f.phi) is None:
        raise PreconditionError(f"form was not built for a blow-up of {phi}")
    blue, red = phi.blue_box, phi.red_box
    own = set(variables(phi))
    coeffs = {}
    for (lam, theta), c in f.coeffs.items():
        if not (blue.fits(lam) and red.fits(theta)):
            continue
        if (lam, theta) not in own:
            raise PreconditionError(f"variable {(lam, theta)} has no column for {phi}")
        coeffs[(lam, theta)] = c
    label = f.label[: phi.j] + f.label[f.phi.j:]
    return LinearForm(coeffs, label, f.tall, phi)


# ----------------------------------------------------------------------------
# direct ideal-membership check


@dataclass
class GeneratorVerdict:
    rho: Partition
    generator: Partition
    essential: bool
    degree: int
    spanning: list[tuple[Partition, Partition]]
    result: linalg.SpanResult
    columns: list[Partition]


@dataclass
class MinimalityReport:
    indices: tuple[int, int, int, int]
    params: tuple[int, int, int, int]
    box: Box
    generators: list[Partition]
    verdicts: list[GeneratorVerdict]
    span_checks: list[SpanCertificate] = field(default_factory=list)

    @property
    def all_essential(self) -> bool:
        return all(v.essential for v in self.verdicts)


def check_guard(cols: int, i: int, j: int, a: int, b: int, force: bool = False) -> None:
    cells = i * j + a * b
    if not force and (cols > MAX_COLS or cells > MAX_CELLS):
        raise GuardExceeded(f"instance too large: n-r={cols} (limit {MAX_COLS}), i*j+a*b={cells} (limit {MAX_CELLS})",
                            {"n-r": cols, "cells": cells})


def generator_verdict(r: int, n: int, i: int, j: int, a: int, b: int, rho: Partition) -> GeneratorVerdict:
    """Is s̄_{(i^j,rho)} outside the span of s̄_{(i^j,lam)} s̄_theta over lam != rho?"""
    box = Box(r, n - r)
    target = stack_rectangle(i, j, rho)
    degree = size(target)
    columns = partitions_in_box(box, degree)
    col_index = {nu: k for k, nu in enumerate(columns)}
    spanning = []
    rows = []
    for lam in partitions_in_box(Box(a, b)):
        if lam == rho or size(lam) > size(rho):
            continue
        g = SchurElement.schur(stack_rectangle(i, j, lam), box)
        for theta in partitions_in_box(box, size(rho) - size(lam)):
            prod = multiply(g, SchurElement.schur(theta, box), box)
            spanning.append((lam, theta))
            rows.append({col_index[nu]: c for nu, c in prod.coeffs.items()})
    vec = {col_index[target]: 1}
    res = linalg.in_row_span(rows, vec, len(columns))
    if res.in_span:
        if linalg.combine(rows, res.coefficients, len(columns)) != linalg.dense(vec, len(columns)):
            raise RuntimeError("membership certificate does not recombine")
    else:
        # the witness must vanish on every spanning product and not on the target
        if any(linalg.apply(rows, res.witness, len(columns))) or not res.witness[col_index[target]]:
            raise RuntimeError("separating witness failed verification")
    return GeneratorVerdict(rho, target, not res.in_span, degree, spanning, res, columns)


def check_minimality(r: int, s: int, t: int, n: int, force: bool = False, threads: int = 1,
                     with_span: bool = False) -> MinimalityReport:
    i, j, a, b = params_from_bigrassmannian(r, s, t, n)
    check_guard(n - r, i, j, a, b, force)
    gens = generator_set(r, s, t, n)
    box = Box(r, n - r)
    if a < 1:
        only = gens[0]
        trivial = GeneratorVerdict(EMPTY, only, True, size(only), [], linalg.SpanResult(False, witness=[Fraction(1)]), [only])
        return MinimalityReport((r, s, t, n), (i, j, a, b), box, gens, [trivial])
    rhos = partitions_in_box(Box(a, b))
    verdicts = _pmap(lambda rho: generator_verdict(r, n, i, j, a, b, rho), rhos, threads)
    report = MinimalityReport((r, s, t, n), (i, j, a, b), box, gens, verdicts)
    if with_span:
        for N in range(1, a * b + 1):
            report.span_checks.append(tall_in_wide_span(ValidTuple(n, r, i, j, a, b, N)))
    return report


# ----------------------------------------------------------------------------
# JSON views


def _rat_list(xs) -> list[str] | None:
    return None if xs is None else [linalg.format_rational(x) for x in xs]


def span_certificate_json(cert: SpanCertificate) -> dict:
    out = {
        "phi": list(cert.phi.as_tuple()),
        "tall_in_wide_span": cert.verdict,
        "wide_rows": [format_partition(p) for p in cert.wide_labels],
        "tall_rows": [],
    }
    for label, res in cert.certificates.items():
        entry = {"nu": format_partition(label), "in_span": res.in_span}
        if res.in_span:
            entry["coefficients"] = {format_partition(w): linalg.format_rational(c)
                                     for w, c in zip(cert.wide_labels, res.coefficients) if c}
        else:
            entry["witness"] = _rat_list(res.witness)
        out["tall_rows"].append(entry)
    return out


def minimality_json(report: MinimalityReport) -> dict:
    r, s, t, n = report.indices
    i, j, a, b = report.params
    out = {
        "bigrassmannian": {"r": r, "s": s, "t": t, "n": n},
        "params": {"i": i, "j": j, "a": a, "b": b},
        "box": {"rows": report.box.rows, "cols": report.box.cols},
        "generator_count": len(report.generators),
        "generators": [format_partition(g) for g in report.generators],
        "all_essential": report.all_essential,
        "verdicts": [],
    }
    for v in report.verdicts:
        entry = {
            "generator": format_partition(v.generator),
            "rho": format_partition(v.rho),
            "degree": v.degree,
            "verdict": "essential" if v.essential else "redundant over Q",
            "spanning_products": len(v.spanning),
        }
        if v.essential:
            entry["separating_functional"] = {format_partition(nu): linalg.format_rational(x)
                                              for nu, x in zip(v.columns, v.result.witness) if x}
        else:
            entry["combination"] = [
                {"lambda": format_partition(lam), "theta": format_partition(theta), "coeff": linalg.format_rational(c)}
                for (lam, theta), c in zip(v.spanning, v.result.coefficients) if c
            ]
        out["verdicts"].append(entry)
    if report.span_checks:
        out["span_checks"] = [span_certificate_json(c) for c in report.span_checks]
    return out
