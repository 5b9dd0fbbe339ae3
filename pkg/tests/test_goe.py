import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from conftest import apply_table, words_avoiding
from shiftlab import goe as goe_module
from shiftlab.cellspace import CellSet, closure, get_space
from shiftlab.errors import ExchangePreconditionError, UnsupportedError
from shiftlab.goe import (
    Difference,
    counting_inequality_check,
    derivable_bound,
    exchange_occurrences,
    find_goe_pattern,
    find_injectivity_witness,
    find_mutually_erasable,
    goe_experiment,
)
from shiftlab.localmap import LocalMap, LocalRule, constant_rule, identity_rule
from shiftlab.subshift import (
    Pattern,
    Verdict,
    alt_00_11,
    even_shift,
    full_shift,
    golden_mean,
    is_allowed,
    random_allowed,
)

Z = get_space("Z")
PAPER = {"00": "1", "01": "0", "10": "0"}
XOR = {a + b: str(int(a) ^ int(b)) for a in "01" for b in "01"}
AND = {a + b: str(int(a) & int(b)) for a in "01" for b in "01"}


def pair_map(table, domain, codomain, name="map"):
    return LocalMap(LocalRule.from_words(Z, ["0", "+1"], table), domain, codomain, name)


def paper_map():
    return pair_map(PAPER, golden_mean(), even_shift(), "paper")


def w(word, start=0):
    return Pattern.from_word(Z, word, start)


def brute_image(table, word):
    """Image of ``word`` on its 1-interior under a rule with N = {0, +1}."""
    return apply_table(table, [0, 1], word)[1:]


def test_difference():
    assert list(Difference.of(w("0101"), w("0111")).cells) == [2]
    assert len(Difference.of(w("01"), w("01"))) == 0
    with pytest.raises(ValueError):
        Difference.of(w("01"), w("011"))


# -- surjectivity ------------------------------------------------------------------

def test_goe_search_paper_map():
    v = find_goe_pattern(paper_map(), 5)
    assert v.holds and v.status == "holds-up-to(5)" and str(v.exactness) == "exact"


def test_goe_search_constant():
    full = full_shift()
    v = find_goe_pattern(LocalMap(constant_rule(Z, "01", "0"), full, full), 3)
    assert not v.holds
    assert v.witness == Pattern(Z, {0: "1"})
    assert v.bound == 0


def test_goe_search_identity():
    gm = golden_mean()
    assert find_goe_pattern(LocalMap(identity_rule(Z, "01"), gm, gm), 6).holds


def test_goe_pattern_reverifies_for_and_rule():
    full = full_shift()
    v = find_goe_pattern(pair_map(AND, full, full), 4)
    assert not v.holds
    p = v.witness
    lo = min(p.domain)
    n = len(p)
    target = "".join(p[c] for c in range(lo, lo + n))
    # windows of length n in the image of length-(n+1) words
    windows = {brute_image(AND, "".join(u)) for u in itertools.product("01", repeat=n + 1)}
    assert target not in windows


# -- pre-injectivity ---------------------------------------------------------------

def test_erasable_search_paper_map():
    v = find_mutually_erasable(paper_map(), 4)
    assert v.holds and v.status == "holds-up-to(4)"


def test_identity_is_pre_injective():
    gm = golden_mean()
    assert find_mutually_erasable(LocalMap(identity_rule(Z, "01"), gm, gm), 4).holds


def test_xor_is_pre_injective():
    # x and x' differing on finitely many cells have different XOR images
    full = full_shift()
    assert find_mutually_erasable(pair_map(XOR, full, full), 3).holds


@pytest.mark.parametrize("table", [AND, {a + b: "0" for a in "01" for b in "01"}])
def test_erasable_pair_reverifies(table):
    full = full_shift()
    v = find_mutually_erasable(pair_map(table, full, full), 3)
    assert not v.holds
    p, q = v.witness
    kappa = v.details["kappa"]
    assert p != q and p.domain == q.domain
    cells = list(p.domain)
    F = CellSet(Z, range(-v.bound, v.bound + 1))
    core = closure(Z, F, kappa)
    assert all(p[c] == q[c] for c in cells if c not in core)
    pw, qw = "".join(p[c] for c in cells), "".join(q[c] for c in cells)
    assert brute_image(table, pw) == brute_image(table, qw)


# -- injectivity -------------------------------------------------------------------

def test_injectivity_witness_paper_map():
    v = find_injectivity_witness(paper_map(), 6)
    assert not v.holds
    p, q, img = v.witness
    assert {p.word(), q.word()} == {"01010101", "10101010"}
    assert img.word() == "000000"
    assert brute_image(PAPER, p.word()) == brute_image(PAPER, q.word()) == "000000"


def test_injectivity_identity_and_constant():
    gm = golden_mean()
    assert find_injectivity_witness(LocalMap(identity_rule(Z, "01"), gm, gm), 6).holds
    v = find_injectivity_witness(LocalMap(constant_rule(Z, "01", "0"), gm, gm), 6)
    assert not v.holds
    p, q, _ = v.witness
    assert p != q


def test_injectivity_window_search_off_line():
    Z2 = get_space("Z2")
    full = full_shift(space=Z2)
    v = find_injectivity_witness(LocalMap(constant_rule(Z2, "01", "1"), full, full), 1, r=0)
    assert not v.holds and v.details["kind"] == "window"


# -- exchange ----------------------------------------------------------------------

def test_exchange_identity_when_equal():
    f = paper_map()
    p = w("0" * 11, -5)
    c = w("0" * 21, -10)
    assert exchange_occurrences(f, c, p, p, [0]) == c


def test_exchange_rejects_unequal_images_under_paper_map():
    f = paper_map()
    with pytest.raises(ExchangePreconditionError):
        exchange_occurrences(f, w("0" * 21, -10), w("0" * 11, -5), w("00000100000", -5), [0])


def test_exchange_with_non_pre_injective_map():
    gm = golden_mean()
    f = LocalMap(constant_rule(Z, "01", "0"), gm, gm)
    p = w("0" * 5, -2)
    p2 = w("00100", -2)
    c = w("0" * 21, -10)
    out = exchange_occurrences(f, c, p, p2, [-5, 5], kappa=1)
    assert out.word() == "0" * 5 + "1" + "0" * 9 + "1" + "0" * 5
    assert is_allowed(gm, out)


def test_exchange_overlap_rejected():
    gm = golden_mean()
    f = LocalMap(constant_rule(Z, "01", "0"), gm, gm)
    with pytest.raises(ExchangePreconditionError):
        exchange_occurrences(f, w("0" * 21, -10), w("0" * 5, -2), w("00100", -2), [0, 2], kappa=1)


def test_exchange_requires_occurrence():
    gm = golden_mean()
    f = LocalMap(constant_rule(Z, "01", "0"), gm, gm)
    c = w("0" * 8 + "1" + "0" * 12, -10)
    with pytest.raises(ExchangePreconditionError):
        exchange_occurrences(f, c, w("0" * 5, -2), w("00100", -2), [0], kappa=1)


# -- counting inequality ------------------------------------------------------------

def test_counting_example():
    gm = golden_mean()
    pinned = {t: w("000", t - 1) for t in (2, 8)}
    rep = counting_inequality_check(gm, range(12), 1, 1, [2, 8], pinned)
    brute = [u for u in words_avoiding(12, ["11"]) if u[1:4] != "000" and u[7:10] != "000"]
    assert rep.x_f == 377 and rep.xi == 13
    assert rep.lhs == len(brute)
    assert rep.rhs == pytest.approx(377 * (12 / 13) ** 2)
    assert rep.holds and rep.applicable


def test_counting_s_empty_is_equality():
    gm = golden_mean()
    rep = counting_inequality_check(gm, range(6), 1, 1, [20], {20: w("000", 19)})
    assert rep.s == []
    assert rep.lhs == rep.x_f == rep.rhs


@pytest.mark.parametrize("theta", [0, 1, 2])
def test_counting_full_shift_exact(theta):
    full = full_shift()
    n = 10
    pin = w("1" * (2 * theta + 1), 5 - theta)
    rep = counting_inequality_check(full, range(n), theta, 1, [5], {5: pin}, check_si=False)
    assert rep.lhs == round((1 - 2.0 ** -(2 * theta + 1)) * 2**n)
    assert rep.holds


@given(data=st.data())
@settings(max_examples=25)
def test_counting_random_instances(data):
    gm = golden_mean()
    rng = random.Random(data.draw(st.integers(0, 10**6)))
    n = data.draw(st.integers(1, 14))
    T = list(range(data.draw(st.integers(-3, 2)), n + 3, 4))
    pinned = {t: random_allowed(gm, range(t - 1, t + 2), rng) for t in T}
    rep = counting_inequality_check(gm, range(n), 1, 1, T, pinned, check_si=False)
    assert rep.hypotheses["apart"] and rep.hypotheses["pinned_allowed"]
    assert rep.holds


# -- experiments -------------------------------------------------------------------

def test_experiment_paper_map():
    rep = goe_experiment(paper_map(), 6, 4)
    doc = rep.to_json()
    assert rep.exit_code == 0
    assert doc["surjectivity"]["verdict"] == "surjective-up-to(6)"
    assert doc["pre_injectivity"]["verdict"] == "pre-injective-up-to(4)"
    assert doc["injectivity"]["verdict"] == "not-injective"
    assert all(rep.hypotheses[k] for k in ("finite_type", "non_empty", "strongly_irreducible", "entropy_parity"))


def test_experiment_identity():
    gm = golden_mean()
    rep = goe_experiment(LocalMap(identity_rule(Z, "01"), gm, gm), 4, 3)
    assert rep.status == "consistent"
    assert rep.surjectivity.holds and rep.pre_injectivity.holds and rep.injectivity.holds


@pytest.mark.parametrize("table,surjective", [(XOR, True), (AND, False)])
def test_experiment_full_shift_rules(table, surjective):
    full = full_shift()
    rep = goe_experiment(pair_map(table, full, full), 4, 3)
    assert rep.status == "consistent"
    assert rep.surjectivity.holds is surjective
    assert rep.pre_injectivity.holds is surjective


def test_experiment_out_of_hypothesis():
    alt = alt_00_11()
    rep = goe_experiment(LocalMap(identity_rule(Z, "01"), alt, alt), 3, 2)
    assert rep.hypotheses["strongly_irreducible"] is False
    assert rep.status == "out-of-hypothesis" and rep.exit_code == 2


def test_experiment_flags_violation(monkeypatch):
    # force contradictory verdicts to exercise the consistency logic
    gm = golden_mean()
    lmap = LocalMap(identity_rule(Z, "01"), gm, gm)
    fake = Verdict("pre-injectivity", False, 1, goe_module.EXACT, (w("0"), w("1")), {"kappa": 1})
    monkeypatch.setattr(goe_module, "find_mutually_erasable", lambda *a, **k: fake)
    rep = goe_experiment(lmap, 3, 2)
    assert rep.status == "violation" and rep.exit_code == 3


def test_derivable_bound():
    full = full_shift()
    assert derivable_bound(LocalMap(constant_rule(Z, "01", "0"), full, full), 2) == 0
    assert derivable_bound(pair_map(XOR, full, full), 3) is None


def test_experiment_refuses_free_group():
    F2 = get_space("free:2")
    full = full_shift(space=F2)
    with pytest.raises(UnsupportedError):
        goe_experiment(LocalMap(identity_rule(F2, "01"), full, full), 1, 1)
