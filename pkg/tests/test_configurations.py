"""Configuration enumeration tests against the published family lists."""

import pytest

from k3extremal.configurations import (
    CASE_A_TYPES,
    Configuration,
    PreconditionError,
    check_deg_j_identity,
    deg_j,
    enumerate_case,
    q_invariants,
    type_index,
)
from k3extremal.kodaira import FiberType


def cfg(*symbols):
    return Configuration.from_symbols(symbols)


# ---------------------------------------------------------------------------
# Counting quantities and the degree identity
# ---------------------------------------------------------------------------

def test_q_invariants_examples():
    q = q_invariants(cfg("II*", "I1*", "I1*"))
    assert (q.q1, q.q2) == (24, 18)
    assert q_invariants(cfg("II*", "II*", "IV")).q5 == 1
    assert q_invariants(cfg("II*", "II*", "IV")).q1 == 24


def test_q_relations_hold_generally():
    for c in (cfg("II*", "I1*", "I1*"), cfg("I4*", "I1*", "I1*"),
              cfg("II*", "II*", "I2", "I1", "I1"), cfg("III*", "I9", "I3", "I3")):
        q = q_invariants(c)
        assert q.q1 == c.euler_sum
        assert q.q2 == c.rank_sum
        assert q.q1 - q.q2 == q.q3


def test_deg_j_examples():
    assert deg_j(cfg("II*", "II*", "IV")) == 0
    assert deg_j(cfg("II*", "I1*", "I1*")) == 2
    assert deg_j(cfg("I4*", "I1*", "I1*")) == 6
    assert deg_j(cfg("II*", "IV*", "I0*")) == 0


def test_deg_j_identity_examples():
    assert check_deg_j_identity(cfg("I2*", "I2*", "I2*"))
    q = q_invariants(cfg("I2*", "I2*", "I2*"))
    assert deg_j(cfg("I2*", "I2*", "I2*")) == q.q4 == 6
    assert check_deg_j_identity(cfg("IV*", "I3*", "I1*"))
    assert q_invariants(cfg("IV*", "I3*", "I1*")).q4 == 4


def test_deg_j_counterexample():
    bad = cfg("II*", "II*", "I2", "I1", "I1")
    with pytest.raises(PreconditionError) as err:
        check_deg_j_identity(bad)
    assert "rank sum" in str(err.value)
    assert check_deg_j_identity(bad, require_extremal=False) is False


def test_deg_j_identity_rejects_deg_zero():
    with pytest.raises(PreconditionError):
        check_deg_j_identity(cfg("II*", "II*", "IV"))


def test_configuration_rejects_smooth_fiber():
    with pytest.raises(PreconditionError):
        cfg("II*", "I0", "II*", "IV")


# ---------------------------------------------------------------------------
# Case A
# ---------------------------------------------------------------------------

CASE_A_EXPECTED = [
    ("II*", "I1*", "I1*"), ("II*", "II*", "IV"), ("II*", "IV*", "I0*"),
    ("III*", "III*", "I0*"), ("III*", "IV*", "I1*"), ("III*", "I2*", "I1*"),
    ("IV*", "IV*", "IV*"), ("IV*", "IV*", "I2*"), ("IV*", "I2*", "I2*"),
    ("IV*", "I3*", "I1*"), ("I2*", "I2*", "I2*"), ("I2*", "I3*", "I1*"),
    ("I4*", "I1*", "I1*"),
]


def test_case_a_is_exactly_the_thirteen_types():
    got = set(enumerate_case("A"))
    expected = {cfg(*symbols) for symbols in CASE_A_EXPECTED}
    assert got == expected
    assert len(enumerate_case("A")) == 13


def test_case_a_deg_zero_sublist():
    zero = {c for c in enumerate_case("A") if deg_j(c) == 0}
    assert zero == {cfg("II*", "II*", "IV"), cfg("II*", "IV*", "I0*"),
                    cfg("III*", "III*", "I0*"), cfg("IV*", "IV*", "IV*")}


def test_case_a_matches_pinned_type_table():
    assert set(enumerate_case("A")) == set(CASE_A_TYPES)
    for m, c in enumerate(CASE_A_TYPES, 1):
        assert type_index(c) == m


def test_type_index_rejects_non_case_a():
    with pytest.raises(PreconditionError):
        type_index(cfg("II*", "II*", "I2", "I1", "I1"))


# ---------------------------------------------------------------------------
# Cases B and C against directly expanded family lists
# ---------------------------------------------------------------------------

def _multisets(total, parts):
    """Non-increasing tuples of `parts` positive integers with the given sum."""
    if parts == 0:
        return [()] if total == 0 else []
    out = []

    def rec(rest, k, cap, acc):
        if k == 0:
            if rest == 0:
                out.append(tuple(acc))
            return
        for v in range(min(cap, rest - (k - 1)), 0, -1):
            rec(rest - v, k - 1, v, acc + [v])

    rec(total, parts, total, [])
    return out


def _case_b_families():
    configs = set()
    star = lambda n: FiberType("I*", n)
    i = lambda n: FiberType("I", n)
    # two starred fibers: n1 >= n2 >= 1 and the four indices sum to 12
    for n1 in range(1, 11):
        for n2 in range(1, n1 + 1):
            rest = 12 - n1 - n2
            if rest < 2:
                continue
            for n3, n4 in _multisets(rest, 2):
                configs.add(Configuration((star(n1), star(n2), i(n3), i(n4))))
    # one starred fiber and one additive exceptional fiber
    for symbol, total in (("II*", 8), ("III*", 9), ("IV*", 10)):
        for n1 in range(1, total - 1):
            for n3, n4 in _multisets(total - n1, 2):
                configs.add(Configuration(
                    (star(n1), FiberType.parse(symbol), i(n3), i(n4))))
    # two additive exceptional fibers
    for pair, total in ((("II*", "II*"), 4), (("II*", "III*"), 5),
                        (("II*", "IV*"), 6), (("III*", "III*"), 6),
                        (("III*", "IV*"), 7), (("IV*", "IV*"), 8)):
        for n3, n4 in _multisets(total, 2):
            configs.add(Configuration(
                (FiberType.parse(pair[0]), FiberType.parse(pair[1]), i(n3), i(n4))))
    return configs


def _case_c_families():
    configs = set()
    star = lambda n: FiberType("I*", n)
    i = lambda n: FiberType("I", n)
    for n1 in range(1, 15):
        for ns in _multisets(18 - n1, 4):
            configs.add(Configuration((star(n1),) + tuple(i(n) for n in ns)))
    for symbol, total in (("II*", 14), ("III*", 15), ("IV*", 16)):
        for ns in _multisets(total, 4):
            configs.add(Configuration(
                (FiberType.parse(symbol),) + tuple(i(n) for n in ns)))
    return configs


def test_case_b_matches_family_expansion():
    assert set(enumerate_case("B")) == _case_b_families()


def test_case_c_matches_family_expansion():
    assert set(enumerate_case("C")) == _case_c_families()


def test_case_b_membership_example():
    assert cfg("II*", "II*", "I3", "I1") in set(enumerate_case("B"))


def test_case_c_partition_count_for_heaviest_fiber():
    family = [c for c in enumerate_case("C")
              if any(f.symbol == "II*" for f in c.fibers)]
    assert len(family) == len(_multisets(14, 4))


# ---------------------------------------------------------------------------
# Structural invariants of the enumeration
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("case", ["A", "B", "C"])
def test_enumeration_invariants(case):
    configs = enumerate_case(case)
    assert len(set(configs)) == len(configs)
    assert list(configs) == sorted(configs, key=Configuration.sort_key)
    for c in configs:
        assert c.euler_sum == 24
        assert c.rank_sum == 18
        assert sum(1 for _ in c.fibers) == c.m
        assert 3 <= c.m <= 5
        gap = c.euler_sum - c.rank_sum
        assert gap == 6
        if deg_j(c) != 0:
            assert q_invariants(c).q5 == 0
            assert check_deg_j_identity(c)


def test_enumeration_deterministic():
    assert enumerate_case("B") == enumerate_case("B")


def test_unknown_case_rejected():
    with pytest.raises(PreconditionError):
        enumerate_case("Q")


def test_parse_configuration_string():
    c = Configuration.parse(" III* , I2* , I1* ")
    assert c == cfg("III*", "I2*", "I1*")
    with pytest.raises(PreconditionError):
        Configuration.parse("  ,, ")
