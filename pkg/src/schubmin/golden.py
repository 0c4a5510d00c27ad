"""
Published reference values reproduced by `schubmin verify-paper`.

Each anchor is a zero-argument callable returning (ok, detail).
"""

from __future__ import annotations

from math import comb

from .lr import lr_coefficient, lr_via_pictures
from .partitions import Box, conjugate
from .presentation import (
    decompose,
    generator_count,
    linear_form,
    make_valid_tuple,
    params_from_bigrassmannian,
    reduce_tall,
    run_algorithm,
    scripted_chooser,
)
from .symfun import FormalTensor, coproduct, cp_map, hopf_convolution

BOX_12_6 = Box(6, 6)
PHI_12_6 = (12, 6, 3, 3, 3, 3, 4)
NU_TALL = (3, 3, 3, 3, 1)


def _ft(terms: dict) -> FormalTensor:
    return FormalTensor(terms, BOX_12_6)


CP_21_1 = _ft({
    ((), ((2, 1), (1,))): 1,
    ((1,), ((1, 1), (1,))): 1,
    ((1,), ((2,), (1,))): 1,
    ((2,), ((1,), (1,))): 1,
    ((1, 1), ((1,), (1,))): 1,
    ((2, 1), ((1,),)): 1,
})

CP_22 = _ft({
    ((), ((2, 2),)): 1,
    ((1,), ((2, 1),)): 1,
    ((2,), ((2,),)): 1,
    ((1, 1), ((1, 1),)): 1,
    ((2, 1), ((1,),)): 1,
})

LINEAR_FORM_33331 = {
    ((), (3, 1)): 1, ((1,), (3,)): 1, ((1,), (2, 1)): 1, ((2,), (2,)): 1,
    ((2,), (1, 1)): 1, ((3,), (1,)): 1, ((1, 1), (2,)): 1, ((2, 1), (1,)): 1,
}

XI = [
    _ft({((), ((3, 1),)): 1, ((1,), ((3,),)): 1, ((1,), ((2, 1),)): 1, ((2,), ((2,),)): 1,
         ((2,), ((1, 1),)): 1, ((3,), ((1,),)): 1, ((1, 1), ((2,),)): 1, ((2, 1), ((1,),)): 1}),
    _ft({((), ((3, 1),)): 1, ((), ((1,), (3,))): -1, ((1,), ((2, 1),)): 1, ((2,), ((2,),)): 1,
         ((2,), ((1, 1),)): 1, ((3,), ((1,),)): 1, ((1, 1), ((2,),)): 1, ((2, 1), ((1,),)): 1}),
    _ft({((), ((3, 1),)): 1, ((), ((1,), (3,))): -1, ((), ((2,), (2,))): -1, ((1,), ((2, 1),)): 1,
         ((1,), ((1,), (2,))): -1, ((2,), ((1, 1),)): 1, ((3,), ((1,),)): 1, ((1, 1), ((2,),)): 1,
         ((2, 1), ((1,),)): 1}),
    _ft({((), ((3, 1),)): 1, ((), ((1,), (3,))): -1, ((), ((2,), (2,))): -1, ((), ((1,), (1,), (2,))): 1,
         ((1,), ((2, 1),)): 1, ((2,), ((1, 1),)): 1, ((3,), ((1,),)): 1, ((1, 1), ((2,),)): 1,
         ((2, 1), ((1,),)): 1}),
]

# the elimination choices behind XI[1..3]
XI_CHOICES = [((1,), ((3,),)), ((2,), ((2,),)), ((1,), ((1,), (2,)))]

XI_FINAL = _ft({
    ((), ((3, 1),)): 1, ((), ((1,), (3,))): -2, ((), ((1,), (2, 1))): -2, ((), ((2,), (2,))): -1,
    ((), ((2,), (1, 1))): -2, ((), ((1,), (1,), (2,))): 6, ((), ((1,), (1,), (1, 1))): 3,
    ((), ((1,), (1,), (1,), (1,))): -3,
})


def anchor_lr_pictures():
    key = ((3, 2, 2, 2), (4, 3, 1), (5, 4, 3, 2, 2, 1))
    a, b = lr_coefficient(*key), lr_via_pictures(*key)
    return a == 4 and b == 4, f"tableaux={a} pictures={b}"


def anchor_conjugate():
    return conjugate((3, 1)) == (2, 1, 1), f"(3,1)' = {conjugate((3, 1))}"


def anchor_coproducts():
    got = {nu: coproduct(nu).coeffs for nu in [(1,), (2, 1), (2, 2)]}
    ok = (got[(1,)] == {((), (1,)): 1, ((1,), ()): 1}
          and len(got[(2, 1)]) == 6 and all(c == 1 for c in got[(2, 1)].values())
          and len(got[(2, 2)]) == 6 and all(c == 1 for c in got[(2, 2)].values()))
    return ok, "Delta(s_1), Delta(s_21), Delta(s_22)"


def anchor_cp():
    a = cp_map((2, 1), [(1,)], BOX_12_6)
    b = cp_map((2, 2), [], BOX_12_6)
    return a == CP_21_1 and b == CP_22, f"CP(21 x 1) has {len(a)} terms, CP(22 x 1) has {len(b)} terms"


def anchor_antipode_identity():
    vals = [hopf_convolution(nu) for nu in [(1,), (2, 1), (3, 1), (2, 2)]]
    return all(not v for v in vals), "antipode convolution vanishes"


def anchor_decomposition():
    phi = make_valid_tuple(*PHI_12_6)
    d = decompose(phi, NU_TALL)
    return d is not None and d.tall and d.nuB == (3, 1), f"nu_B={d.nuB if d else None}"


def anchor_linear_form():
    f = linear_form(make_valid_tuple(*PHI_12_6), NU_TALL)
    return f.coeffs == LINEAR_FORM_33331, f.render()


def anchor_algorithm_trace():
    box = BOX_12_6
    _, steps = run_algorithm((3, 1), box, scripted_chooser(XI_CHOICES))
    ok = all(steps[k].state == XI[k] for k in range(4))
    return ok, "xi^(0)..xi^(3) with forced choices"


def anchor_reduce():
    red = reduce_tall(make_valid_tuple(*PHI_12_6), NU_TALL)
    ok = red.final == XI_FINAL and red.expanded.coeffs == {((), (2, 1, 1)): -1}
    return ok, red.expanded.render()


def anchor_reduce_base():
    red = reduce_tall(make_valid_tuple(4, 2, 1, 1, 1, 1, 1), (1, 1))
    return red.expanded.coeffs == {((), (1,)): 1}, red.expanded.render()


def anchor_params():
    ok = all(params_from_bigrassmannian(2 * m, 2 * m, m + 1, 4 * m) == (m, m, m, m) for m in (1, 2, 3, 4))
    return ok, "(2m,2m,m+1,4m) -> (m,m,m,m)"


def anchor_generator_counts():
    counts = [generator_count(2 * m, 2 * m, m + 1, 4 * m) for m in (1, 2, 3)]
    return counts == [comb(2 * m, m) for m in (1, 2, 3)], f"counts {counts}"


ANCHORS = [
    ("LR coefficient c_{3222,431}^{543221} = 4 (tableaux and pictures)", anchor_lr_pictures),
    ("conjugate of 31 is 211", anchor_conjugate),
    ("coproduct expansions of s_1, s_21, s_22", anchor_coproducts),
    ("CP(s21 x s1) and CP(s22 x 1)", anchor_cp),
    ("antipode convolution identity", anchor_antipode_identity),
    ("phi=(12,6,3,3,3,3,4), nu=33331 is decomposable and tall", anchor_decomposition),
    ("linear form of nu=33331", anchor_linear_form),
    ("elimination iterations xi^(0)..xi^(3)", anchor_algorithm_trace),
    ("Reduce(33331) = -(1 x s211)", anchor_reduce),
    ("Reduce base case |nu_B| = 1", anchor_reduce_base),
    ("bigrassmannian parameters i=j=a=b=m", anchor_params),
    ("generator count C(2m,m)", anchor_generator_counts),
]
