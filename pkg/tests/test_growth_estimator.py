from __future__ import annotations

import math

import pytest

from catentropy.errors import (
    DimensionMismatch,
    NonPositiveValue,
    WindowTooShort,
    ZeroPairingAt,
)
from catentropy.exact_linalg import ExactMatrix
from catentropy.growth_estimator import (
    ExtTable,
    PositiveSequence,
    entropy_from_ext_sequence,
    eval_ext_distance,
    fit_growth,
    pairing_sequence,
)

M = ExactMatrix.from_rows


def test_eval_ext_distance_at_zero_sums_dims():
    assert eval_ext_distance(ExtTable.from_dict({0: 2, 1: 3}), 0.0) == 5.0


def test_eval_ext_distance_weighted():
    got = eval_ext_distance(ExtTable.from_dict({0: 2, 1: 3}), 1.0)
    assert abs(got - (2 + 3 * math.exp(-1))) < 1e-14


def test_eval_ext_distance_empty_table():
    assert eval_ext_distance(ExtTable.from_dict({}), 0.3) == 0.0


def test_ext_table_rejects_negative_dims():
    with pytest.raises(NonPositiveValue):
        ExtTable.from_dict({0: -1})


def test_sequence_needs_eight_values():
    with pytest.raises(WindowTooShort):
        PositiveSequence.from_values([1.0] * 7)


def test_sequence_rejects_nonpositive():
    with pytest.raises(NonPositiveValue):
        PositiveSequence.from_values([1.0] * 9 + [0.0])


def test_fit_growth_exponential_times_linear():
    seq = PositiveSequence.from_values([2.0**n * n for n in range(1, 201)])
    est = fit_growth(seq)
    assert abs(est.rho_hat - 2.0) <= 1e-3 * 2.0
    assert abs(est.s_hat - 1.0) <= 0.1


def test_fit_growth_triangular_numbers():
    # a_n = (n+1)(n+2)/2 grows like n^2/2
    seq = PositiveSequence.from_values(
        [(n + 1) * (n + 2) / 2 for n in range(1, 401)]
    )
    est = fit_growth(seq)
    assert abs(est.rho_hat - 1.0) <= 1e-3
    assert abs(est.s_hat - 2.0) <= 0.15


def test_fit_growth_constant():
    est = fit_growth(PositiveSequence.from_values([7.0] * 50))
    assert abs(est.rho_hat - 1.0) < 1e-12
    assert abs(est.s_hat) < 1e-9
    assert est.residual < 1e-12


def test_fit_growth_window_too_short_after_drop():
    seq = PositiveSequence.from_values([float(n) for n in range(1, 10)])
    with pytest.raises(WindowTooShort):
        fit_growth(seq, n_lo=5, n_hi=9)


def test_fit_growth_window_outside_range():
    seq = PositiveSequence.from_values([float(n) for n in range(1, 21)])
    with pytest.raises(WindowTooShort):
        fit_growth(seq, n_lo=0)
    with pytest.raises(WindowTooShort):
        fit_growth(seq, n_hi=50)


def test_fit_growth_recovery_grid():
    for rho in (1.0, 1.5, 2.618):
        for s in (0, 1, 2, 3):
            for c in (0.5, 1.0, 10.0):
                vals = [c * rho**n * n**s for n in range(1, 401)]
                est = fit_growth(PositiveSequence.from_values(vals))
                assert abs(est.rho_hat - rho) <= 1e-3 * rho, (rho, s, c)
                assert abs(est.s_hat - s) <= 0.15, (rho, s, c)


def test_fit_growth_scale_invariance():
    base = [1.5**n * n**2 for n in range(1, 201)]
    ref = fit_growth(PositiveSequence.from_values(base))
    for c in (1e-3, 42.0, 1e5):
        est = fit_growth(PositiveSequence.from_values([c * v for v in base]))
        assert abs(est.rho_hat - ref.rho_hat) < 1e-6
        assert abs(est.s_hat - ref.s_hat) < 1e-6


def test_entropy_from_shift_tables():
    # dims {-m n: 1}: the weighted sum is e^(m n t), growth rate m*t
    m = 2
    tables = [ExtTable.from_dict({-m * n: 1}) for n in range(1, 41)]
    rep = entropy_from_ext_sequence(tables)
    assert abs(rep[0.0]["h_t_hat"]) < 1e-9
    assert abs(rep[0.0]["h_pol_t_hat"]) < 1e-6
    assert abs(rep[1.0]["h_t_hat"] - m) < 1e-9
    assert abs(rep[-0.5]["h_t_hat"] + 0.5 * m) < 1e-9


def test_entropy_from_constant_tables():
    tables = [ExtTable.from_dict({0: 4, 2: 1}) for _ in range(30)]
    rep = entropy_from_ext_sequence(tables)
    for t, entry in rep.items():
        assert abs(entry["h_t_hat"]) < 1e-9
        assert abs(entry["h_pol_t_hat"]) < 1e-6


def test_entropy_needs_eight_tables():
    with pytest.raises(WindowTooShort):
        entropy_from_ext_sequence([ExtTable.from_dict({0: 1})] * 7)


def test_pairing_sequence_fibonacci_corner():
    # v^T I F^n w with v = w = e_0 picks the (0, 0) entry of F^n
    f = M([[2, 1], [1, 1]])
    seq = pairing_sequence(ExactMatrix.identity(2), f, (1, 0), (1, 0), 60)
    power = f
    for k in range(3):
        assert seq.values[k] == float(power.entry(0, 0))
        power = power @ f
    est = fit_growth(seq)
    assert abs(est.rho_hat - (3 + math.sqrt(5)) / 2) <= 1e-3 * est.rho_hat
    assert abs(est.s_hat) <= 0.15


def test_pairing_sequence_identity_is_constant():
    seq = pairing_sequence(
        ExactMatrix.identity(2), ExactMatrix.identity(2), (1, 0), (1, 0), 20
    )
    assert set(seq.values) == {1.0}


def test_pairing_sequence_unipotent_linear():
    seq = pairing_sequence(
        M([[0, 1], [-1, 0]]), M([[1, 0], [1, 1]]), (1, 0), (1, 0), 50
    )
    assert list(seq.values[:4]) == [1.0, 2.0, 3.0, 4.0]
    est = fit_growth(seq)
    assert abs(est.s_hat - 1.0) <= 0.15


def test_pairing_sequence_zero_reported_with_indices():
    with pytest.raises(ZeroPairingAt) as err:
        pairing_sequence(
            ExactMatrix.identity(2), ExactMatrix.identity(2), (1, 0), (0, 1), 10
        )
    assert err.value.indices == tuple(range(1, 11))


def test_pairing_sequence_dimension_check():
    with pytest.raises(DimensionMismatch):
        pairing_sequence(
            ExactMatrix.identity(3), ExactMatrix.identity(2), (1, 0, 0), (1, 0), 10
        )
