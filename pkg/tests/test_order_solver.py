import pytest
from hypothesis import given, settings, strategies as st

from lucasdiv.lucas_core import DEGENERATE_PAIRS, LucasParams, lucas_table, lucas_u
from lucasdiv.order_solver import (
    DivRecord,
    NMode,
    ScanConfig,
    Status,
    TheoremViolation,
    bound_holds,
    min_s_at_n,
    min_s_over_n,
    solve_at_n,
    solve_record,
    structural_s,
    verify_klt_bound,
    verify_theorem,
)

FIB = LucasParams(1, 1)
GRID = [LucasParams(a, b) for a in range(1, 7) for b in (-1, 1) if (a, b) not in DEGENERATE_PAIRS]
grid_params = st.sampled_from(GRID)


def naive_min_s(params, k, m, n, s_max):
    """Least s <= s_max with U_m | U_{n+k}^s - U_n^s, on full integers."""
    um, t, w = lucas_u(params, m), lucas_u(params, n + k), lucas_u(params, n)
    for s in range(1, s_max + 1):
        if (t**s - w**s) % um == 0:
            return s
    return None


def test_examples():
    assert min_s_over_n(FIB, 1, 7) == (1, 1)          # F_2 - F_1 = 0
    assert min_s_at_n(FIB, 1, 7, 3) == 4              # F_4^2 + F_3^2 = F_7
    assert min_s_at_n(FIB, 1, 2, 5) == 1              # U_2 = 1
    assert min_s_at_n(FIB, 1, 5, 4) is None           # F_5 = 5 divides F_5^s but never F_4^s = 3^s
    assert solve_at_n(FIB, 1, 5, 4) == (None, Status.NONE_EXISTS)
    # n = 0 only counts behind the flag: U_7 | U_7^1 - U_0^1
    assert min_s_over_n(FIB, 7, 7, allow_n_zero=True) == (1, 0)
    assert min_s_over_n(FIB, 7, 7)[1] >= 1


@pytest.mark.parametrize("params", GRID[:6], ids=lambda p: f"a{p.a}b{p.b}")
def test_min_s_at_n_matches_naive_oracle(params):
    for k in (1, 2, 3):
        for m in range(2, 25):
            for n in range(0, 4 * m + 1):
                assert min_s_at_n(params, k, m, n, 12) == naive_min_s(params, k, m, n, 12), (k, m, n)


@given(grid_params, st.integers(1, 4), st.integers(2, 60), st.integers(0, 240))
@settings(max_examples=300)
def test_shift_by_m_preserves_answer(params, k, m, n):
    assert min_s_at_n(params, k, m, n) == min_s_at_n(params, k, m, n + m)


@given(grid_params, st.integers(1, 3), st.integers(2, 45))
@settings(max_examples=150, deadline=None)
def test_min_over_n_equals_full_period_search(params, k, m):
    best = None
    for n in range(1, 4 * m + 1):
        s = min_s_at_n(params, k, m, n)
        if s is not None and (best is None or s < best[0]):
            best = (s, n)
    assert min_s_over_n(params, k, m) == best


@given(grid_params, st.integers(1, 6), st.integers(2, 200))
@settings(max_examples=300, deadline=None)
def test_structural_predictions_confirmed(params, k, m):
    pred = structural_s(params, k, m)
    if pred is None:
        return
    s, n = pred
    assert s in (1, 2, 4)
    got = min_s_at_n(params, k, m, n)
    assert got is not None and got <= s


def test_structural_examples():
    assert structural_s(FIB, 1, 9) == (4, 4)
    s, n = structural_s(FIB, 2, 10)
    assert s <= 2 and n == 9
    assert structural_s(LucasParams(3, -1), 1, 9) is None


def test_bounds():
    assert bound_holds(19999, 1, 1) and not bound_holds(20000, 1, 1)
    assert verify_klt_bound(100, 3)
    with pytest.raises(ValueError):
        verify_klt_bound(100, 4)


def test_input_validation():
    with pytest.raises(ValueError):
        min_s_at_n(FIB, 1, 1, 3)
    with pytest.raises(ValueError):
        min_s_over_n(FIB, 0, 5)
    with pytest.raises(ValueError):
        ScanConfig((1, 2), s_cap=3)
    with pytest.raises(ValueError):
        ScanConfig((1, 2), n_mode=NMode.PER_N)


def test_solve_record_none_exists_is_vacuous():
    # a even, k odd: U_{n+k} and U_n have opposite parity, an even U_m never divides the difference
    rec = solve_record(2, 1, 1, 6)
    assert rec.s_min is None and rec.status is Status.NONE_EXISTS and rec.bound_ok


def small_config():
    return ScanConfig((1, 4), (-1, 1), k_max=2, m_max=40)


def test_scan_deterministic_across_workers():
    one = list(verify_theorem(small_config(), workers=1))
    two = list(verify_theorem(small_config(), workers=2, chunk=3))
    assert one == two
    assert [(r.a, r.b, r.k, r.m) for r in one] == list(small_config().coordinates())
    assert all(r.bound_ok for r in one)


def test_scan_resume():
    full = list(verify_theorem(small_config(), workers=1))
    cut = full[57]
    rest = list(verify_theorem(small_config(), workers=1, start_after=(cut.a, cut.b, cut.k, cut.m)))
    assert full[:58] + rest == full


def test_scan_empty_when_m_max_below_two():
    assert list(verify_theorem(ScanConfig((1, 3), m_max=1), workers=1)) == []


def test_min_over_n_is_always_structural_on_small_grid():
    # on this grid the minimizing n always lands on a closed-form factorization
    config = ScanConfig((1, 6), (-1, 1), k_max=3, m_max=60, s_cap=4)
    records = list(verify_theorem(config, workers=1))
    assert {r.s_min for r in records} <= {None, 1, 2, 4}
    assert all(r.status is not Status.CAP for r in records)


def test_violation_raises(monkeypatch):
    import lucasdiv.order_solver as mod

    real = mod.solve_record

    def fake(a, b, k, m, s_cap=None):
        rec = real(a, b, k, m, s_cap)
        if m == 17:
            return DivRecord(a, b, k, m, None, None, False, False, Status.CAP)
        return rec

    monkeypatch.setattr(mod, "solve_record", fake)
    config = ScanConfig((1, 1), (1,), k_max=1, m_max=30)
    with pytest.raises(TheoremViolation) as info:
        list(verify_theorem(config, workers=1))
    assert info.value.record.m == 17
    records = list(verify_theorem(config, workers=1, raise_on_violation=False))
    assert [r.m for r in records if not r.bound_ok] == [17]


def test_div_record_equality_ignores_status():
    a = DivRecord(1, 1, 1, 7, 1, 1, True, True, Status.FOUND)
    assert a == DivRecord(1, 1, 1, 7, 1, 1, True, True, Status.NONE_EXISTS)
