"""
Symmetric functions in the Schur basis, the quotient by the Grassmannian
ideal, and the Hopf operations needed by the reduction algorithm.

Elements are sparse {key: int} maps.  A ``box`` of None means the full ring;
a Box means the quotient where s_lam survives only if lam fits the box.
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable

from .lr import lr_coefficient, schur_product_expand
from .partitions import Box, EMPTY, Partition, conjugate, format_partition, order_key, size, subpartitions


def _clean(d: dict) -> dict:
    return {k: v for k, v in d.items() if v}


def _render_terms(terms: list[tuple[int, str, bool]]) -> str:
    """Join (coefficient, basis text, glued) triples; glued puts the
    magnitude right against the basis, as in 2(s̄[1]⊗1)."""
    if not terms:
        return "0"
    out = []
    for k, (c, basis, glued) in enumerate(terms):
        mag = abs(c)
        if basis == "1":
            body = str(mag)
        elif mag == 1:
            body = basis
        else:
            body = f"{mag}{basis}" if glued else f"{mag} {basis}"
        if k == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append((" - " if c < 0 else " + ") + body)
    return "".join(out)


class SchurElement:
    """A Z-linear combination of Schur functions s_lam (or their images in a quotient)."""

    __slots__ = ("coeffs", "box")

    def __init__(self, coeffs: dict[Partition, int] | None = None, box: Box | None = None):
        coeffs = _clean(dict(coeffs or {}))
        if box is not None:
            bad = [lam for lam in coeffs if not box.fits(lam)]
            if bad:
                raise ValueError(f"{bad[0]} does not fit in {box}")
        self.coeffs = coeffs
        self.box = box

    @classmethod
    def schur(cls, lam: Partition, box: Box | None = None, coeff: int = 1) -> "SchurElement":
        if box is not None and not box.fits(lam):
            return cls({}, box)
        return cls({tuple(lam): coeff}, box)

    @classmethod
    def one(cls, box: Box | None = None) -> "SchurElement":
        return cls({EMPTY: 1}, box)

    def _check(self, other: "SchurElement"):
        if self.box != other.box:
            raise ValueError(f"ring mismatch: {self.box} vs {other.box}")

    def __add__(self, other):
        self._check(other)
        out = defaultdict(int, self.coeffs)
        for k, v in other.coeffs.items():
            out[k] += v
        return SchurElement(out, self.box)

    def __neg__(self):
        return SchurElement({k: -v for k, v in self.coeffs.items()}, self.box)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return SchurElement({k: other * v for k, v in self.coeffs.items()}, self.box)
        self._check(other)
        return multiply(self, other, self.box)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int):
            return self.coeffs == ({EMPTY: other} if other else {})
        if not isinstance(other, SchurElement):
            return NotImplemented
        return self.box == other.box and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.box, frozenset(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, lam: Partition) -> int:
        return self.coeffs.get(tuple(lam), 0)

    def __iter__(self):
        return iter(self.items())

    def items(self) -> list[tuple[Partition, int]]:
        return sorted(self.coeffs.items(), key=lambda kv: order_key(kv[0]))

    def degree_set(self) -> set[int]:
        return {size(lam) for lam in self.coeffs}

    def __repr__(self):
        return f"SchurElement({self.render()})"

    def render(self) -> str:
        sym = "s" if self.box is None else "s̄"
        return _render_terms([(c, f"{sym}{format_partition(lam)}" if lam else "1", False) for lam, c in self.items()])


def project_to_box(f: SchurElement, box: Box) -> SchurElement:
    """The quotient map: drop every s_lam whose lam does not fit `box`."""
    return SchurElement({lam: c for lam, c in f.coeffs.items() if box.fits(lam)}, box)


def multiply(f: SchurElement, g: SchurElement, box: Box | None = None) -> SchurElement:
    """Product of f and g, truncated to `box` when one is given."""
    out: dict[Partition, int] = defaultdict(int)
    for lam, a in f.coeffs.items():
        for mu, b in g.coeffs.items():
            if not lam:
                if box is None or box.fits(mu):
                    out[mu] += a * b
                continue
            if not mu:
                if box is None or box.fits(lam):
                    out[lam] += a * b
                continue
            for nu, c in schur_product_expand(lam, mu, box).items():
                out[nu] += a * b * c
    return SchurElement(out, box)


def product_of(factors: Iterable[Partition], box: Box | None = None) -> SchurElement:
    """s_{mu1} s_{mu2} ... as a single element."""
    acc = SchurElement.one(box)
    for mu in factors:
        acc = multiply(acc, SchurElement.schur(mu, box), box)
        if not acc:
            break
    return acc


def antipode(f: SchurElement) -> SchurElement:
    """S(s_lam) = (-1)^{|lam|} s_{lam'}."""
    return SchurElement({conjugate(lam): (-1) ** size(lam) * c for lam, c in f.coeffs.items()}, None if f.box is None else Box(f.box.cols, f.box.rows))


def omega(f: SchurElement) -> SchurElement:
    """The involution s_lam -> s_{lam'}."""
    return SchurElement({conjugate(lam): c for lam, c in f.coeffs.items()}, None if f.box is None else Box(f.box.cols, f.box.rows))


class TensorElement:
    """A Z-combination of s_lam (x) s_theta, in Lambda(x)Lambda or its box quotient."""

    __slots__ = ("coeffs", "box")

    def __init__(self, coeffs: dict[tuple[Partition, Partition], int] | None = None, box: Box | None = None):
        coeffs = _clean(dict(coeffs or {}))
        if box is not None:
            for lam, theta in coeffs:
                if not (box.fits(lam) and box.fits(theta)):
                    raise ValueError(f"({lam}, {theta}) does not fit in {box}")
        self.coeffs = coeffs
        self.box = box

    def __add__(self, other):
        if self.box != other.box:
            raise ValueError("ring mismatch")
        out = defaultdict(int, self.coeffs)
        for k, v in other.coeffs.items():
            out[k] += v
        return TensorElement(out, self.box)

    def __neg__(self):
        return TensorElement({k: -v for k, v in self.coeffs.items()}, self.box)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TensorElement({k: other * v for k, v in self.coeffs.items()}, self.box)
        # componentwise product (f (x) g)(h (x) k) = fh (x) gk
        if self.box != other.box:
            raise ValueError("ring mismatch")
        out = defaultdict(int)
        for (l1, r1), a in self.coeffs.items():
            for (l2, r2), b in other.coeffs.items():
                left = multiply(SchurElement.schur(l1, self.box), SchurElement.schur(l2, self.box), self.box)
                right = multiply(SchurElement.schur(r1, self.box), SchurElement.schur(r2, self.box), self.box)
                for lam, x in left.coeffs.items():
                    for theta, y in right.coeffs.items():
                        out[(lam, theta)] += a * b * x * y
        return TensorElement(out, self.box)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.box == other.box and self.coeffs == other.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __getitem__(self, key) -> int:
        lam, theta = key
        return self.coeffs.get((tuple(lam), tuple(theta)), 0)

    def items(self):
        return sorted(self.coeffs.items(), key=lambda kv: (order_key(kv[0][0]), order_key(kv[0][1])))

    def __repr__(self):
        return f"TensorElement({self.render()})"

    def render(self) -> str:
        sym = "s" if self.box is None else "s̄"
        def fac(lam):
            return "1" if not lam else f"{sym}{format_partition(lam)}"
        return _render_terms([(c, f"({fac(lam)}⊗{fac(theta)})", True) for (lam, theta), c in self.items()])


def tensor_from_pairs(pairs: dict[tuple[Partition, Partition], int], box: Box | None = None) -> TensorElement:
    return TensorElement(pairs, box)


def coproduct(nu: Partition) -> TensorElement:
    """Delta(s_nu) = sum c_{lam,mu}^{nu} s_lam (x) s_mu, in the full ring."""
    out = {}
    for lam in subpartitions(nu):
        for mu in subpartitions(nu):
            if size(lam) + size(mu) != size(nu):
                continue
            c = lr_coefficient(lam, mu, nu)
            if c:
                out[(lam, mu)] = c
    return TensorElement(out)


def coproduct_element(f: SchurElement) -> TensorElement:
    out = TensorElement({}, None)
    for lam, c in f.coeffs.items():
        out = out + coproduct(lam) * c
    return out


def project_tensor(t: TensorElement, box: Box) -> TensorElement:
    return TensorElement({(l, r): c for (l, r), c in t.coeffs.items() if box.fits(l) and box.fits(r)}, box)


def hopf_convolution(nu: Partition) -> SchurElement:
    """nabla . (S (x) id) . Delta applied to s_nu."""
    out = SchurElement({}, None)
    for (lam, mu), c in coproduct(nu).coeffs.items():
        left = antipode(SchurElement.schur(lam))
        out = out + multiply(left, SchurElement.schur(mu)) * c
    return out


def counit_unit(nu: Partition) -> SchurElement:
    """eta . epsilon applied to s_nu."""
    return SchurElement.one() if not nu else SchurElement({})


def rights_key(factors: Iterable[Partition]) -> tuple[Partition, ...]:
    """Canonical form of a multiset of right factors (empty partitions dropped)."""
    return tuple(sorted((tuple(f) for f in factors if f), key=order_key))


class FormalTensor:
    """
    Combination of s̄_lam (x) (s̄_{mu1} ... s̄_{muk}) whose right-hand products
    are kept unexpanded.  Keys are (lam, sorted tuple of mu's); the empty
    tuple stands for the right factor 1.
    """

    __slots__ = ("terms", "box")

    def __init__(self, terms: dict | None = None, box: Box | None = None):
        if box is None:
            raise ValueError("formal tensors live in a box quotient")
        clean = {}
        for (lam, rights), c in (terms or {}).items():
            if not c:
                continue
            key = (tuple(lam), rights_key(rights))
            clean[key] = clean.get(key, 0) + c
        clean = _clean(clean)
        for lam, rights in clean:
            if not box.fits(lam) or not all(box.fits(mu) for mu in rights):
                raise ValueError(f"term ({lam}, {rights}) leaves {box}")
        self.terms = clean
        self.box = box

    def __add__(self, other):
        if self.box != other.box:
            raise ValueError("ring mismatch")
        out = defaultdict(int, self.terms)
        for k, v in other.terms.items():
            out[k] += v
        return FormalTensor(out, self.box)

    def __neg__(self):
        return FormalTensor({k: -v for k, v in self.terms.items()}, self.box)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return FormalTensor({k: other * v for k, v in self.terms.items()}, self.box)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, FormalTensor):
            return NotImplemented
        return self.box == other.box and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __getitem__(self, key) -> int:
        lam, rights = key
        return self.terms.get((tuple(lam), rights_key(rights)), 0)

    def items(self):
        return sorted(self.terms.items(), key=formal_term_order)

    def expand(self) -> TensorElement:
        return expand_formal_tensor(self)

    def __repr__(self):
        return f"FormalTensor({self.render()})"

    def render(self) -> str:
        def fac(lam):
            return "1" if not lam else f"s̄{format_partition(lam)}"
        terms = []
        for (lam, rights), c in self.items():
            right = "·".join(fac(mu) for mu in rights) if rights else "1"
            terms.append((c, f"({fac(lam)}⊗{right})", True))
        return _render_terms(terms)


def formal_term_order(item):
    (lam, rights), _ = item
    return (order_key(lam), len(rights), tuple(order_key(mu) for mu in rights))


def cp_map(left: Partition, rights: Iterable[Partition], box: Box) -> FormalTensor:
    """
    CP(s̄_left (x) prod(rights)).

    With no right factors this is Delta(s_left) minus s_left (x) 1; otherwise
    each coproduct term s_rho (x) s_tau becomes s̄_rho (x) prod(rights)*s̄_tau,
    with tau empty contributing no new factor.
    """
    left = tuple(left)
    rights = rights_key(rights)
    if not box.fits(left) or not all(box.fits(mu) for mu in rights):
        raise ValueError(f"cp_map input ({left}, {rights}) does not fit {box}")
    out: dict = {}
    for (rho, tau), c in coproduct(left).coeffs.items():
        if not rights and rho == left and not tau:
            continue
        if not (box.fits(rho) and box.fits(tau)):
            continue
        key = (rho, rights_key(rights + ((tau,) if tau else ())))
        out[key] = out.get(key, 0) + c
    return FormalTensor(out, box)


def expand_formal_tensor(t: FormalTensor) -> TensorElement:
    """Multiply out every right-hand product inside the box quotient."""
    out: dict = defaultdict(int)
    for (lam, rights), c in t.terms.items():
        for theta, d in product_of(rights, t.box).coeffs.items():
            out[(lam, theta)] += c * d
    return TensorElement(out, t.box)
