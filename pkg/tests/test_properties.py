"""Property-based checks of the structural invariants."""

import math

import numpy as np
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from genvar import oracle
from genvar.decomp import check_majorant_sandwich, jordan_decompose, monotone_majorant
from genvar.dvar import (
    d_decompose,
    d_variation_profile,
    is_d_periodically_increasing,
    total_d_variation,
)
from genvar.funcspace import SampledFunction, pointwise_product, sup_norm
from genvar.reports import check_nondecreasing
from genvar.rvar import (
    ErrorFunctionTable,
    check_holder,
    check_phi_monotone,
    check_phi_subadditive,
    concave_majorant,
    lipschitz_constant,
    phi_from_variation,
    r_variation_profile,
    superadditivity_gap,
    total_r_variation,
)

from conftest import sampled_functions

exponents = st.sampled_from([0.3, 0.5, 1.0, 1.5, 2.0, 3.0])
spacings = st.floats(0.05, 3.0)


def segment_total(f, lo, hi, d):
    return total_d_variation(f.segment(lo, hi), d)


@given(sampled_functions(max_size=10), exponents)
def test_dp_matches_oracle(f, r):
    fast = total_r_variation(f, r)
    slow = oracle.brute_force_total_r_variation(f, r)
    assert math.isclose(fast, slow, rel_tol=1e-12, abs_tol=1e-300)


@given(sampled_functions(), exponents)
def test_profile_nondecreasing(f, r):
    prof = r_variation_profile(f, r)
    assert prof.values[0] == 0
    assert np.all(np.diff(prof.values) >= 0)


@given(sampled_functions(), exponents, st.data())
def test_segment_superadditivity(f, r, data):
    assume(len(f) >= 3)
    c = data.draw(st.integers(1, len(f) - 2))
    gap = superadditivity_gap(f, r, c)
    scale = max(1.0, total_r_variation(f, r))
    assert gap >= -1e-12 * scale
    if r <= 1:
        assert abs(gap) <= 1e-12 * scale


@given(sampled_functions(), st.sampled_from([(0.3, 0.7), (0.5, 1.0), (1.0, 2.0), (0.5, 3.0)]))
def test_power_class_monotone(f, pair):
    r1, r2 = pair
    v1 = total_r_variation(f, r1)
    v2 = total_r_variation(f, r2)
    assert v2 <= v1 ** (r2 / r1) * (1 + 1e-12) + 1e-12


@given(sampled_functions(), st.data(), st.floats(0.05, 1.0), st.floats(0.05, 1.0))
def test_product_bound(f, data, r1, r2):
    ys = data.draw(st.lists(st.floats(-10, 10), min_size=len(f), max_size=len(f)))
    g = f.with_values(np.array(ys))
    r = max(r1, r2)
    k = max(sup_norm(f), sup_norm(g))
    lhs = total_r_variation(pointwise_product(f, g), r)
    rhs = k ** r * (total_r_variation(f, r) + total_r_variation(g, r))
    assert lhs <= rhs * (1 + 1e-12) + 1e-9


@given(sampled_functions(uniform=True), st.sampled_from([1.0, 1.5, 2.0]))
def test_phi_subadditive_and_holder(f, r):
    phi = phi_from_variation(f, r)
    scale = max(1.0, float(phi.phis.max()))
    assert check_phi_subadditive(phi, tol=1e-12 * scale).passed
    assert check_holder(f, phi, tol=1e-12 * scale).passed


@given(sampled_functions(), st.sampled_from([1.0, 1.5, 2.0, 3.0]))
def test_lipschitz_bound(f, r):
    c = lipschitz_constant(f)
    total = total_r_variation(f, r)
    assert total <= c ** r * f.length ** r * (1 + 1e-12) + 1e-9


@given(sampled_functions(), st.sampled_from([0.3, 0.7, 1.0]))
def test_jordan_certified(f, r):
    pair = jordan_decompose(f, r)
    assert pair.certified, pair.report().summary()
    assert np.allclose(pair.part_a.ys - pair.part_b.ys, f.ys, rtol=0,
                       atol=1e-12 * max(1.0, sup_norm(pair.part_a)))


@given(st.lists(st.floats(0, 5), min_size=2, max_size=15), st.sampled_from([0.25, 0.5, 0.75]),
       st.floats(0.2, 3.0))
def test_forward_direction(steps, p, c):
    # nondecreasing g minus a subadditive phi is phi-monotone
    xs = np.linspace(0.0, 1.0, len(steps))
    g = np.cumsum(steps)
    phi = ErrorFunctionTable.from_function(lambda u: c * np.asarray(u) ** p, xs)
    f = SampledFunction(xs, g - phi.phis)
    assert check_phi_monotone(f, phi, tol=1e-12 * max(1.0, float(g[-1]))).passed


@given(sampled_functions(uniform=True, min_size=3), st.sampled_from([1.0, 2.0]))
def test_regularized_pipeline(f, r):
    phi = concave_majorant(phi_from_variation(f, r))
    g = monotone_majorant(f.shifted(-f.a), phi)
    assert check_majorant_sandwich(f.shifted(-f.a), g, phi, tol=1e-9).passed


@settings(max_examples=60)
@given(sampled_functions(max_size=12), spacings)
def test_d_dp_matches_oracle(f, d):
    assume(f.length >= d)
    fast = total_d_variation(f, d)
    slow = oracle.brute_force_total_d_variation(f, d)
    assert math.isclose(fast, slow, rel_tol=1e-12, abs_tol=1e-300)


@given(sampled_functions(), spacings)
def test_d_profile_periodic(f, d):
    assume(f.length >= d)
    prof = d_variation_profile(f, d)
    scale = max(1.0, float(prof.values.max()))
    assert is_d_periodically_increasing(prof.as_function(), d, tol=1e-12 * scale).passed


@given(sampled_functions(min_size=3), spacings, st.data())
def test_d_restricted_superadditivity(f, d, data):
    assume(f.length >= 2 * d)
    cuts = [k for k in range(1, len(f) - 1)
            if f.xs[k] - f.a >= d - 1e-12 and f.b - f.xs[k] >= d - 1e-12]
    assume(cuts)
    k = data.draw(st.sampled_from(cuts))
    whole = total_d_variation(f, d)
    parts = segment_total(f, 0, k, d) + segment_total(f, k, len(f) - 1, d)
    assert parts <= whole + 1e-12 * max(1.0, whole)


@given(sampled_functions(), spacings)
def test_d_periodic_total_is_endpoint_difference(f, d):
    assume(f.length >= d)
    if is_d_periodically_increasing(f, d, tol=0).passed:
        assert abs(total_d_variation(f, d) - (f.ys[-1] - f.ys[0])) <= 1e-12 * max(1.0, sup_norm(f))


@given(sampled_functions(), spacings, st.sampled_from(["least", "envelope"]))
def test_d_decomposition(f, d, method):
    assume(f.length >= 2 * d)
    pair = d_decompose(f, d, method=method)
    checks = pair.verified
    assert checks["reconstruction"]
    assert checks["part_b_d_periodically_increasing"]
    if method == "least":
        assert pair.certified, pair.report().summary()


def exact_periodic(f, d):
    # u[j] = max(f[j], u[i] for admissible i): only maxima, so no rounding
    u = f.ys.copy()
    for j in range(len(u)):
        prior = u[: int(np.searchsorted(f.xs, f.xs[j] - d + 1e-12, side="right"))]
        if prior.size:
            u[j] = max(u[j], prior.max())
    return f.with_values(u)


@given(sampled_functions(), sampled_functions(), spacings, st.floats(0, 5), st.sampled_from([0.5, 1.0, 2.0]))
def test_cone_closure(f, g, d, lam, r):
    assume(f.length >= d)
    u = exact_periodic(f, d)
    v = exact_periodic(f.with_values(np.resize(g.ys, len(f))), d)
    assert is_d_periodically_increasing(u, d, tol=0.0).passed
    tol = 1e-12 * max(1.0, sup_norm(u), sup_norm(v))
    assert is_d_periodically_increasing(u + v, d, tol=2 * tol).passed
    assert is_d_periodically_increasing(u.scaled(lam), d, tol=tol * max(1.0, lam)).passed
    nonneg = u.with_values(u.ys - min(0.0, float(u.ys.min())))
    assert is_d_periodically_increasing(nonneg, d, tol=0.0).passed
    assert is_d_periodically_increasing(nonneg.with_values(nonneg.ys ** r), d, tol=0.0).passed


@given(sampled_functions(), sampled_functions(), spacings)
def test_converse_difference_bounded(f, g, d):
    assume(f.length >= 2 * d)
    g = f.with_values(np.resize(g.ys, len(f)))
    u = d_decompose(f, d).part_b
    v = d_decompose(g, d).part_b
    diff = u - v
    total = total_d_variation(diff, d)
    assert math.isfinite(total)
    assert sup_norm(diff) <= sup_norm(u) + sup_norm(v)


@given(sampled_functions())
def test_running_max_check_agrees_with_pairs(f):
    rep = check_nondecreasing("mono", f.xs, f.ys, 0.0)
    worst = max([f.ys[i] - f.ys[j] for i in range(len(f)) for j in range(i + 1, len(f))] + [0.0])
    assert rep.worst_violation == worst
