from collections import Counter
from math import comb

import pytest

from schubmin import golden
from schubmin.partitions import Box, EMPTY, contains, partitions_in_box, size, stack_rectangle
from schubmin.presentation import (
    GuardExceeded,
    InvalidTuple,
    PreconditionError,
    ValidTuple,
    allowable_partitions,
    blowup_of,
    blowup_tuple,
    build_system,
    check_minimality,
    decompose,
    decomposable_partitions,
    default_chooser,
    format_system,
    generator_count,
    generator_set,
    lift_partition,
    linear_form,
    make_valid_tuple,
    minimal_blowup,
    multiset_decreases,
    params_from_bigrassmannian,
    random_chooser,
    reduce_tall,
    restrict_form,
    run_algorithm,
    scripted_chooser,
    tall_in_wide_span,
    tensor_of_form,
    valid_tuples,
)
from schubmin.symfun import TensorElement

PHI = make_valid_tuple(*golden.PHI_12_6)
SMALL = make_valid_tuple(4, 2, 1, 1, 1, 1, 1)


# ---- valid tuples and generators

def test_valid_tuple_examples():
    assert PHI.as_tuple() == (12, 6, 3, 3, 3, 3, 4)
    assert SMALL.box == Box(2, 2)
    with pytest.raises(InvalidTuple) as e:
        make_valid_tuple(12, 6, 3, 3, 4, 3, 4)
    assert "a+j<=r" in e.value.violations


@pytest.mark.parametrize("bad, rule", [
    ((4, 4, 1, 1, 1, 1, 1), "r<n"),
    ((8, 4, 2, 1, 3, 1, 1), "a+i<=n-r"),
    ((8, 4, 1, 2, 1, 2, 1), "b<=i"),
    ((8, 4, 2, 1, 1, 2, 1), "b<=j"),
    ((8, 4, 1, 1, 1, 1, 2), "N<=ab"),
])
def test_each_validity_rule(bad, rule):
    with pytest.raises(InvalidTuple) as e:
        make_valid_tuple(*bad)
    assert rule in e.value.violations


def test_n17_parameters_violate_validity():
    # n=17, r=9, i=5, j=3, a=4, b=2: a+i = 9 exceeds n-r = 8
    with pytest.raises(InvalidTuple) as e:
        make_valid_tuple(17, 9, 5, 3, 4, 2, 1)
    assert e.value.violations == ["a+i<=n-r"]


def test_valid_tuples_sweep_is_valid():
    for phi in valid_tuples(4, 4, 3):
        assert make_valid_tuple(*phi.as_tuple()) == phi


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_params_family(m):
    assert params_from_bigrassmannian(2 * m, 2 * m, m + 1, 4 * m) == (m, m, m, m)
    assert generator_count(2 * m, 2 * m, m + 1, 4 * m) == comb(2 * m, m)


def test_params_examples():
    assert params_from_bigrassmannian(2, 2, 2, 4) == (1, 1, 1, 1)
    assert params_from_bigrassmannian(3, 3, 2, 6) == (2, 2, 1, 2)
    with pytest.raises(InvalidTuple):
        params_from_bigrassmannian(2, 2, 0, 4)


def test_generator_examples():
    assert generator_set(2, 2, 2, 4) == [(1,), (1, 1)]
    assert len(generator_set(4, 4, 3, 8)) == 6
    for idx in [(3, 3, 2, 6), (4, 3, 2, 7), (5, 4, 3, 9)]:
        i, j, a, b = params_from_bigrassmannian(*idx)
        assert len(generator_set(*idx)) == len(partitions_in_box(Box(a, b))) == generator_count(*idx)


def test_degenerate_single_generator():
    i, j, a, b = params_from_bigrassmannian(2, 2, 1, 4)
    assert i == 4 - 2 and a == 0
    assert generator_set(2, 2, 1, 4) == [(2, 2)]
    report = check_minimality(2, 2, 1, 4)
    assert report.all_essential and len(report.verdicts) == 1


# ---- allowable / decomposable

def test_allowable_examples():
    assert set(allowable_partitions(SMALL)) == {(2,), (1, 1)}
    got = allowable_partitions(PHI)
    assert got and all(contains(nu, (3, 3, 3)) and size(nu) == 13 and PHI.box.fits(nu) for nu in got)


def test_decompose_examples():
    d = decompose(PHI, (3, 3, 3, 3, 1))
    assert (d.nuB, d.nuR, d.tall) == ((3, 1), EMPTY, True)
    d = decompose(PHI, (4, 3, 3, 2, 1))
    assert (d.nuB, d.nuR, d.tall) == ((2, 1), (1,), False)
    assert decompose(make_valid_tuple(12, 6, 2, 2, 2, 2, 4), (2, 2, 1, 1, 1, 1)) is None
    with pytest.raises(PreconditionError):
        decompose(PHI, (3, 3, 3))


@pytest.mark.parametrize("phi", valid_tuples(4, 5, 3)[::7])
def test_decomposition_consistency(phi):
    for d in decomposable_partitions(phi):
        merged = tuple(phi.i + (d.nuR[k] if k < len(d.nuR) else 0) for k in range(phi.j)) + d.nuB
        assert merged == d.nu
        assert size(d.nuB) + size(d.nuR) == phi.N
        assert phi.blue_box.fits(d.nuB) and phi.red_box.fits(d.nuR)


# ---- linear forms and tensors

def test_linear_form_examples():
    f = linear_form(PHI, golden.NU_TALL)
    assert f.coeffs == golden.LINEAR_FORM_33331
    assert f.render().startswith("A_{[],[3,1]} + A_{[1],[3]}")
    assert linear_form(SMALL, (2,)).coeffs == {(EMPTY, (1,)): 1}
    assert linear_form(SMALL, (1, 1)).coeffs == {(EMPTY, (1,)): 1}


def test_tensor_of_form_examples():
    assert tensor_of_form(SMALL, (1, 1)) == TensorElement({(EMPTY, (1,)): 1}, SMALL.box)
    for d in decomposable_partitions(PHI):
        assert linear_form(PHI, d.nu).to_tensor(PHI.box) == tensor_of_form(PHI, d.nu)


# ---- CP elimination

def test_reduce_examples():
    red = reduce_tall(PHI, golden.NU_TALL)
    assert red.final == golden.XI_FINAL
    assert red.expanded.coeffs == {(EMPTY, (2, 1, 1)): -1}
    assert red.matches_closed_form
    assert reduce_tall(SMALL, (1, 1)).expanded.coeffs == {(EMPTY, (1,)): 1}


def test_reduce_nuB_two_has_negative_sign():
    phi = make_valid_tuple(8, 4, 1, 1, 2, 1, 2)
    red = reduce_tall(phi, (1, 1, 1))
    assert red.nuB == (1, 1) and red.expanded.coeffs == {(EMPTY, (2,)): -1}
    phi = make_valid_tuple(6, 3, 2, 2, 1, 2, 2)
    red = reduce_tall(phi, (2, 2, 2))
    assert red.nuB == (2,) and red.expanded.coeffs == {(EMPTY, (1, 1)): -1}


def test_reduce_rejects_wide_and_undecomposable():
    with pytest.raises(PreconditionError):
        reduce_tall(PHI, (4, 3, 3, 2, 1))
    with pytest.raises(PreconditionError):
        reduce_tall(PHI, (3, 3, 3))


def test_forced_choice_iterations():
    _, steps = run_algorithm((3, 1), PHI.box, scripted_chooser(golden.XI_CHOICES))
    for k in range(4):
        assert steps[k].state == golden.XI[k]


def test_default_order_prefers_large_left_factors():
    _, steps = run_algorithm((3, 1), PHI.box)
    chosen = [s.chosen[0] for s in steps[1:]]
    assert chosen[:2] == [(3,), (2, 1)]
    assert [size(lam) for lam in chosen] == sorted((size(lam) for lam in chosen), reverse=True)


def test_scripted_chooser_rejects_missing_terms():
    with pytest.raises(ValueError):
        run_algorithm((2,), Box(2, 2), scripted_chooser([((5,), ())]))


def test_multiset_order():
    assert multiset_decreases(Counter([3]), Counter([2, 2, 2, 1]))
    assert multiset_decreases(Counter([3, 1]), Counter([3]))
    assert not multiset_decreases(Counter([2]), Counter([2]))
    assert not multiset_decreases(Counter([2]), Counter([3]))


TALL_CASES = [(PHI, golden.NU_TALL), (make_valid_tuple(10, 5, 2, 2, 3, 2, 4), (2, 2, 2, 1, 1)),
              (make_valid_tuple(10, 5, 2, 2, 3, 2, 4), (2, 2, 2, 2))]


@pytest.mark.parametrize("phi, nu", TALL_CASES)
@pytest.mark.parametrize("chooser", ["default", "random"])
def test_sign_pattern_and_measure(phi, nu, chooser):
    d = decompose(phi, nu)
    pick = random_chooser(7) if chooser == "random" else default_chooser
    _, steps = run_algorithm(d.nuB, phi.box, pick)
    for step in steps:
        for (lam, rights), c in step.state.terms.items():
            assert c * (-1) ** (len(rights) + 1) > 0


@pytest.mark.parametrize("phi, nu", TALL_CASES)
def test_confluence(phi, nu):
    expected = reduce_tall(phi, nu).expanded
    for seed in range(20):
        assert reduce_tall(phi, nu, random_chooser(seed)).expanded == expected


def test_closed_form_small_sweep():
    for phi in valid_tuples(4, 4, 3):
        for d in decomposable_partitions(phi):
            if d.tall:
                assert reduce_tall(phi, d.nu).matches_closed_form, (phi, d.nu)


# ---- system and span certificate

def test_system_examples():
    system = build_system(SMALL)
    assert len(system.forms) == 2 and len(system.tall) == 1 and len(system.wide) == 1
    assert len(system.variables) == 1
    system = build_system(PHI)
    assert len(system.forms) == len(decomposable_partitions(PHI)) == 16
    assert (len(system.tall), len(system.wide), len(system.variables)) == (3, 13, 15)
    text = format_system(system)
    assert "tall equations (3):" in text and "wide equations (13):" in text
    assert "nu=[3,3,3,3,1]: " + linear_form(PHI, golden.NU_TALL).render() in text


def test_system_threads_match_serial():
    assert build_system(PHI, threads=4).forms == build_system(PHI).forms


def test_span_examples():
    cert = tall_in_wide_span(PHI)
    assert cert.verdict and len(cert.certificates) == 3
    cert = tall_in_wide_span(SMALL)
    assert cert.verdict
    assert cert.certificates[(1, 1)].coefficients == [1]


def test_span_small_N_regime():
    for phi in valid_tuples(4, 5, 4):
        if phi.N <= min(phi.j, phi.n - phi.r - phi.i):
            assert tall_in_wide_span(phi).verdict


def test_tall_rows_distinct_left_generators():
    for phi in valid_tuples(4, 4, 3):
        tops = [stack_rectangle(phi.i, phi.j, lam) for lam in partitions_in_box(phi.blue_box, phi.N)]
        assert len(set(tops)) == len(tops) and all(phi.box.fits(t) for t in tops)


# ---- blow-up and restriction

def test_blowup_examples():
    assert blowup_tuple(SMALL, 1).as_tuple() == (16, 4, 1, 2, 1, 1, 1)
    assert blowup_tuple(SMALL, 0) == SMALL
    assert blowup_of(SMALL, blowup_tuple(SMALL, 2)) == 2
    for phi in valid_tuples(4, 4, 4):
        q = minimal_blowup(phi)
        hat = blowup_tuple(phi, q)
        assert hat.N <= min(hat.j, hat.n - hat.r - hat.i)


def _base_with_red_box(phi, nu):
    f = linear_form(phi, nu)
    red = phi.red_box
    return {k: c for k, c in f.coeffs.items() if red.fits(k[1])}


def _restricted(phi, q, d):
    hat = blowup_tuple(phi, q)
    return restrict_form(linear_form(hat, lift_partition(hat, d)), phi)


def test_restriction_exact_on_small_tuple():
    for d in decomposable_partitions(SMALL):
        assert _restricted(SMALL, 1, d).coeffs == linear_form(SMALL, d.nu).coeffs


@pytest.mark.parametrize("phi", valid_tuples(4, 5, 3)[::5])
def test_restriction_kills_exactly_the_variables_outside_the_red_box(phi):
    for d in decomposable_partitions(phi):
        g = _restricted(phi, 1, d)
        assert g.coeffs == _base_with_red_box(phi, d.nu)
        assert g.label == d.nu and g.tall == d.tall


def test_restriction_differs_when_theta_is_taller_than_j():
    phi = make_valid_tuple(6, 3, 1, 1, 2, 1, 2)
    assert linear_form(phi, (1, 1, 1)).coeffs == {(EMPTY, (1, 1)): 1, ((1,), (1,)): 1}
    d = decompose(phi, (1, 1, 1))
    assert _restricted(phi, 1, d).coeffs == {((1,), (1,)): 1}


def test_restrict_to_killed_support_is_zero():
    phi = make_valid_tuple(6, 3, 1, 1, 2, 1, 2)
    f = linear_form(blowup_tuple(phi, 1), lift_partition(blowup_tuple(phi, 1), decompose(phi, (1, 1, 1))))
    f.coeffs = {k: c for k, c in f.coeffs.items() if len(k[1]) > phi.j}
    assert f.coeffs and not restrict_form(f, phi).coeffs


def test_restrict_requires_blowup():
    with pytest.raises(PreconditionError):
        restrict_form(linear_form(PHI, golden.NU_TALL), SMALL)


# ---- minimality

def test_minimality_examples():
    report = check_minimality(2, 2, 2, 4)
    assert report.generators == [(1,), (1, 1)] and report.all_essential
    # s̄_11 against s̄_1 * s̄_1 = s̄_2 + s̄_11
    v = report.verdicts[1]
    assert v.generator == (1, 1) and len(v.spanning) == 1
    assert report.verdicts[0].spanning == []
    report = check_minimality(4, 4, 3, 8, threads=3)
    assert len(report.verdicts) == 6 and report.all_essential


def test_minimality_guard():
    with pytest.raises(GuardExceeded) as e:
        check_minimality(10, 10, 6, 20)
    assert e.value.measured["n-r"] == 10
    with pytest.raises(InvalidTuple):
        check_minimality(2, 2, 0, 4)


def _small_indices(max_cols, max_n):
    from schubmin.bruhat import bigrassmannian_indices
    for n in range(2, max_n + 1):
        for idx in bigrassmannian_indices(n):
            if n - idx[0] <= max_cols:
                yield idx


@pytest.mark.parametrize("idx", list(_small_indices(4, 8)))
def test_minimality_agrees_with_syzygy_view(idx):
    report = check_minimality(*idx, with_span=True)
    span_ok = all(c.verdict for c in report.span_checks)
    assert report.all_essential == span_ok
    assert report.all_essential


def test_redundant_generator_is_detected():
    # s̄_2 is a multiple of s̄_1 in any box, so it is not essential among {s̄_1, s̄_2}
    from schubmin.presentation import generator_verdict
    v = generator_verdict(2, 4, 1, 1, 1, 1, (1,))
    assert v.essential
    from schubmin import linalg
    from schubmin.symfun import SchurElement, multiply
    box = Box(2, 2)
    prod = multiply(SchurElement.schur((1,), box), SchurElement.schur((1,), box), box)
    cols = partitions_in_box(box, 2)
    rows = [{cols.index(nu): c for nu, c in prod.coeffs.items()}]
    assert not linalg.in_row_span(rows, {cols.index((2,)): 1}, len(cols)).in_span
    assert linalg.in_row_span(rows, {cols.index((2,)): 1, cols.index((1, 1)): 1}, len(cols)).in_span
