import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import fib
from shiftlab.cellspace import get_space
from shiftlab.entropy import (
    EMPTY,
    FolnerPrefix,
    entropy_compare,
    entropy_estimate,
    entropy_value,
    exact_entropy_1d,
    finite_space_count,
    parse_base,
    parse_windows,
)
from shiftlab.errors import SpecError, UnsupportedError
from shiftlab.localmap import LocalMap, constant_rule, relabel_rule
from shiftlab.subshift import (
    Pattern,
    SubshiftSpec,
    alt_00_11,
    empty_shift,
    even_shift,
    f010_111,
    full_shift,
    golden_mean,
)

Z = get_space("Z")
LOG2_PHI = math.log2((1 + math.sqrt(5)) / 2)


def test_full_shift_estimates():
    est = entropy_estimate(full_shift(), FolnerPrefix.intervals(Z, range(1, 8)))
    assert est.values == [1.0] * 7
    assert est.oracle_value == pytest.approx(1.0, abs=1e-12)


def test_golden_mean_n20():
    est = entropy_estimate(golden_mean(), FolnerPrefix.intervals(Z, range(1, 21)))
    assert est.counts == [fib(n + 2) for n in range(1, 21)]
    assert est.values[-1] == pytest.approx(math.log2(17711) / 20, abs=1e-12)
    assert est.values[-1] == pytest.approx(0.7057, abs=1e-3)


def test_alt_shift_estimates():
    est = entropy_estimate(alt_00_11(), FolnerPrefix.intervals(Z, range(1, 11)))
    assert est.counts == [2] * 10
    assert est.values == [pytest.approx(1 / n) for n in range(1, 11)]
    assert exact_entropy_1d(alt_00_11()) == pytest.approx(0.0, abs=1e-12)


def test_exact_oracles():
    assert exact_entropy_1d(golden_mean()) == pytest.approx(LOG2_PHI, abs=1e-9)
    assert exact_entropy_1d(even_shift()) == pytest.approx(LOG2_PHI, abs=1e-9)
    assert exact_entropy_1d(full_shift()) == pytest.approx(1.0, abs=1e-12)
    assert exact_entropy_1d(golden_mean(), "e") == pytest.approx(math.log((1 + math.sqrt(5)) / 2), abs=1e-9)
    assert exact_entropy_1d(empty_shift()) is EMPTY


def test_f010_111_oracle_against_growth():
    # counts grow like λ^n; the ratio of consecutive counts approaches λ
    est = entropy_estimate(f010_111(), FolnerPrefix.intervals(Z, [30, 31]))
    ratio = est.counts[1] / est.counts[0]
    assert math.log2(ratio) == pytest.approx(exact_entropy_1d(f010_111()), abs=1e-4)


@given(blocks=st.lists(st.text("01", min_size=1, max_size=4), max_size=4))
@settings(max_examples=60)
def test_perron_root_matches_eigenvalues(blocks):
    spec = SubshiftSpec(Z, "01", [Pattern.from_word(Z, b) for b in blocks])
    graph = spec.oracle
    if graph.empty:
        assert exact_entropy_1d(spec) is EMPTY
        return
    radius = max(abs(np.linalg.eigvals(graph.adjacency())))
    assert graph.perron_root() == pytest.approx(radius, abs=1e-9)


def test_convergence():
    for spec in (golden_mean(), even_shift()):
        est = entropy_estimate(spec, FolnerPrefix.intervals(Z, [20, 40]))
        assert abs(est.values[0] - est.oracle_value) <= 0.02 + 0.05 * (spec.name == "even")
        assert abs(est.values[1] - est.oracle_value) <= 0.01 + 0.04 * (spec.name == "even")


def test_empty_sentinel():
    est = entropy_estimate(empty_shift(), FolnerPrefix.intervals(Z, [1, 2]))
    assert est.values == [EMPTY, EMPTY]
    assert est.records()[0]["estimate"] == "empty"
    assert EMPTY < -1e300 or EMPTY < 0.0
    assert not (0.0 < EMPTY)
    assert sorted([0.5, EMPTY, 0.0]) == [EMPTY, 0.0, 0.5]
    assert entropy_value(0, 4) is EMPTY


def test_non_amenable_refused():
    F2 = get_space("free:2")
    with pytest.raises(UnsupportedError):
        entropy_estimate(full_shift(space=F2), FolnerPrefix.balls(F2, [0, 1]))


def test_balls_on_z2_are_certified():
    Z2 = get_space("Z2")
    est = entropy_estimate(full_shift(space=Z2), FolnerPrefix.balls(Z2, [0, 1, 2]), r=1)
    assert est.values == [1.0, 1.0, 1.0]
    assert str(est.exactness) == "certified(1)"
    assert est.oracle_value is None


def test_prefix_validation():
    with pytest.raises(SpecError):
        FolnerPrefix(Z, [range(3), range(2)])
    with pytest.raises(SpecError):
        FolnerPrefix(Z, [])
    with pytest.raises(UnsupportedError):
        FolnerPrefix.intervals(get_space("Z2"), [1])


def test_boundary_ratios_decrease():
    for name in ("Z", "Z2", "Dinf"):
        space = get_space(name)
        prefix = FolnerPrefix.balls(space, range(1, 7))
        for rho in range(1, 4):
            ratios = prefix.boundary_ratios(rho)
            assert all(a >= b for a, b in zip(ratios, ratios[1:]))


def test_parse_helpers():
    assert parse_windows("1..4") == [1, 2, 3, 4]
    assert parse_windows("2,5") == [2, 5]
    with pytest.raises(SpecError):
        parse_windows("5..1")
    assert parse_base("e") == math.e
    with pytest.raises(SpecError):
        parse_base("1")


def test_compare_golden_even():
    cmp = entropy_compare(golden_mean(), even_shift())
    assert cmp.oracles_equal is True
    doc = cmp.to_json()
    assert doc["first_oracle"] == pytest.approx(doc["second_oracle"], abs=1e-9)


def test_compare_self_identical():
    cmp = entropy_compare(golden_mean(), golden_mean())
    assert cmp.first.values == cmp.second.values


def test_compare_constant_image():
    gm = golden_mean()
    cmp = entropy_compare(gm, lmap=LocalMap(constant_rule(Z, "01", "0"), gm, gm))
    assert cmp.second.counts == [1] * 20
    assert all(b < a for a, b in zip(cmp.first.values, cmp.second.values))


def test_conjugacy_invariance_bit_flip():
    full = full_shift()
    flip = LocalMap(relabel_rule(Z, {"0": "1", "1": "0"}), full, full)
    cmp = entropy_compare(full, lmap=flip, prefix=FolnerPrefix.intervals(Z, range(1, 11)))
    assert cmp.first.counts == cmp.second.counts


def test_entropy_gap_alt_below_full():
    cmp = entropy_compare(alt_00_11(), full_shift(), FolnerPrefix.intervals(Z, range(2, 21)))
    assert all(a < b for a, b in zip(cmp.first.values, cmp.second.values))


def test_finite_space_counts():
    C3, C4 = get_space("cycle:3"), get_space("cycle:4")
    full3 = finite_space_count(full_shift(space=C3))
    assert full3.count == 8 and full3.identity_holds
    gm4 = finite_space_count(golden_mean(C4))
    assert gm4.count == 7 and gm4.identity_holds
    empty = finite_space_count(empty_shift(space=C4))
    assert empty.count == 0 and empty.entropy is EMPTY
    with pytest.raises(UnsupportedError):
        finite_space_count(golden_mean())


@given(n=st.integers(1, 8))
def test_cycle_counts_brute_force(n):
    C = get_space(f"cycle:{n}")
    brute = 0
    for k in range(2**n):
        bits = [(k >> i) & 1 for i in range(n)]
        if not any(bits[i] and bits[(i + 1) % n] for i in range(n)):
            brute += 1
    assert finite_space_count(golden_mean(C)).count == brute
