import random
from functools import cmp_to_key

import pytest

from proofbench.budget import StepBudget, check_magnitude, checked_pow
from proofbench.errors import (
    BudgetExceededError,
    MagnitudeCapError,
    NonCanonicalError,
    OrdinalParseError,
)
from proofbench.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    add,
    compare,
    dot_plus,
    e_tower,
    from_int,
    fundamental_sequence,
    hardy,
    hardy_value,
    natural_sum,
    omega_power,
    omega_tower,
    parse_ordinal,
    predecessor,
    print_ordinal,
    step_down_le,
    step_down_le_mono,
    two_tower,
)


def random_ordinal(rng, depth):
    """Random canonical ordinal with w-nesting bounded by depth+1."""
    n_terms = rng.randint(0, 3)
    if n_terms == 0:
        return ZERO
    if depth == 0:
        exps = [from_int(e) for e in rng.sample(range(4), n_terms)]
    else:
        exps = []
        seen = set()
        while len(exps) < n_terms:
            cand = random_ordinal(rng, depth - 1)
            if cand not in seen:
                seen.add(cand)
                exps.append(cand)
    exps.sort(key=cmp_to_key(compare), reverse=True)
    return Ordinal(tuple((e, rng.randint(1, 2)) for e in exps))


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(20260822)
    out = [ZERO, ONE, OMEGA, parse_ordinal("w^{w}"), parse_ordinal("w^{w^{w}}")]
    while len(out) < 250:
        out.append(random_ordinal(rng, 1))
    while len(out) < 350:
        out.append(random_ordinal(rng, 2))
    return out


class TestParsePrint:
    def test_zero(self):
        assert parse_ordinal("0") == ZERO
        assert print_ordinal(ZERO) == "0"

    def test_cnf_reading(self):
        a = parse_ordinal("w^{w}*2 + w*3 + 5")
        assert a.terms == ((OMEGA, 2), (ONE, 3), (ZERO, 5))

    def test_whitespace_insignificant(self):
        assert parse_ordinal("w^{w}*2+w*3+5") == parse_ordinal(" w^{ w } * 2 + w * 3 + 5 ")

    def test_ascending_rejected(self):
        with pytest.raises(NonCanonicalError):
            parse_ordinal("w + w^{2}")

    def test_duplicate_exponent_rejected(self):
        with pytest.raises(NonCanonicalError):
            parse_ordinal("w + w")

    def test_zero_term_in_sum_rejected(self):
        with pytest.raises(NonCanonicalError):
            parse_ordinal("w + 0")
        with pytest.raises(NonCanonicalError):
            parse_ordinal("w*0")

    def test_parse_error_has_position(self):
        with pytest.raises(OrdinalParseError) as info:
            parse_ordinal("w^")
        assert info.value.position is not None
        with pytest.raises(OrdinalParseError):
            parse_ordinal("")
        with pytest.raises(OrdinalParseError):
            parse_ordinal("w}")

    def test_round_trip(self, corpus):
        for a in corpus:
            assert parse_ordinal(print_ordinal(a)) == a

    def test_constructor_validates(self):
        with pytest.raises(NonCanonicalError):
            Ordinal(((ZERO, 1), (ONE, 1)))
        with pytest.raises(NonCanonicalError):
            Ordinal(((ONE, 0),))


class TestArithmetic:
    def test_compare_total_order(self, corpus):
        rng = random.Random(7)
        for _ in range(300):
            a, b, c = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
            assert compare(a, b) == -compare(b, a)
            if compare(a, b) <= 0 and compare(b, c) <= 0:
                assert compare(a, c) <= 0

    def test_add_examples(self):
        assert add(ONE, OMEGA) == OMEGA
        assert add(OMEGA, ONE) == parse_ordinal("w + 1")
        assert add(parse_ordinal("w*2 + 3"), parse_ordinal("w + 1")) == parse_ordinal("w*3 + 1")

    def test_add_associative(self, corpus):
        rng = random.Random(11)
        for _ in range(200):
            a, b, c = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
            assert add(add(a, b), c) == add(a, add(b, c))

    def test_natural_sum_commutative_associative(self, corpus):
        rng = random.Random(13)
        for _ in range(200):
            a, b, c = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
            assert natural_sum(a, b) == natural_sum(b, a)
            assert natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))

    def test_add_right_monotone(self, corpus):
        rng = random.Random(17)
        for _ in range(200):
            a, b, c = rng.choice(corpus), rng.choice(corpus), rng.choice(corpus)
            if compare(b, c) < 0:
                assert compare(add(a, b), add(a, c)) < 0

    def test_dot_plus_defined_iff_sums_agree(self, corpus):
        rng = random.Random(19)
        for _ in range(300):
            g, a = rng.choice(corpus), rng.choice(corpus)
            d = dot_plus(g, a)
            if d is None:
                assert add(g, a) != natural_sum(g, a)
            else:
                assert d == add(g, a) == natural_sum(g, a)

    def test_dot_plus_examples(self):
        assert dot_plus(parse_ordinal("w^{2}*3"), parse_ordinal("w*5 + 3")) == parse_ordinal(
            "w^{2}*3 + w*5 + 3"
        )
        assert dot_plus(OMEGA, parse_ordinal("w^{2}")) is None
        assert dot_plus(ZERO, OMEGA) == OMEGA
        assert dot_plus(OMEGA, ZERO) == OMEGA


class TestFundamentalSequence:
    def test_of_zero(self):
        assert fundamental_sequence(ZERO, 5) == ZERO

    def test_successor_drops_one(self, corpus):
        for a in corpus:
            s = add(a, ONE)
            for x in (0, 1, 4):
                assert fundamental_sequence(s, x) == a

    def test_strictly_below(self, corpus):
        for a in corpus:
            if a.is_zero:
                continue
            for x in (0, 1, 2, 5):
                assert compare(fundamental_sequence(a, x), a) < 0

    def test_limit_monotone_in_index(self, corpus):
        for a in corpus:
            if not a.is_limit:
                continue
            for x in (0, 1, 2, 7):
                assert compare(
                    fundamental_sequence(a, x), fundamental_sequence(a, x + 1)
                ) < 0

    def test_known_values(self):
        assert fundamental_sequence(parse_ordinal("w^{w}"), 2) == parse_ordinal("w^{2}")
        assert fundamental_sequence(parse_ordinal("w^{w+1}"), 3) == parse_ordinal("w^{w}*3")
        assert fundamental_sequence(parse_ordinal("w*2"), 4) == parse_ordinal("w + 4")
        assert fundamental_sequence(OMEGA, 7) == from_int(7)
        assert fundamental_sequence(parse_ordinal("w^{2}"), 0) == ZERO


class TestStepDown:
    def test_fs_member(self, corpus):
        for a in corpus:
            if a.is_zero:
                continue
            for n in (1, 2, 3):
                assert step_down_le(fundamental_sequence(a, n), a, n, StepBudget(50000))

    def test_reflexive_and_zero(self, corpus):
        reached = 0
        for a in corpus[:50]:
            assert step_down_le(a, a, 2, StepBudget(10))
            try:
                assert step_down_le(ZERO, a, 2, StepBudget(20000))
                reached += 1
            except BudgetExceededError:
                continue
        assert reached > 15

    def test_transitive_on_descent_chains(self, corpus):
        # b ->* m ->* a by iterating [3], so a <=_3 m <=_3 b; then a <=_3 b
        rng = random.Random(23)
        hits = 0
        for _ in range(120):
            b = rng.choice(corpus)
            m = b
            for _ in range(rng.randint(0, 12)):
                m = fundamental_sequence(m, 3)
            a = m
            for _ in range(rng.randint(0, 12)):
                a = fundamental_sequence(a, 3)
            assert step_down_le(m, b, 3, StepBudget(40000))
            assert step_down_le(a, m, 3, StepBudget(40000))
            assert step_down_le(a, b, 3, StepBudget(80000))
            hits += 1
        assert hits == 120

    def test_budget_is_a_non_answer(self):
        with pytest.raises(BudgetExceededError):
            step_down_le(ZERO, parse_ordinal("w^{w^{w}}"), 3, StepBudget(50))

    def test_mono_shortcut_at_large_index(self):
        assert step_down_le_mono(
            parse_ordinal("w^{2}"), parse_ordinal("w^{w}"), 10**9, StepBudget(100000)
        )

    def test_mono_agrees_with_direct(self, corpus):
        rng = random.Random(29)
        for _ in range(80):
            a, b = rng.choice(corpus), rng.choice(corpus)
            try:
                direct = step_down_le(a, b, 5, StepBudget(8000))
            except BudgetExceededError:
                continue
            assert step_down_le_mono(a, b, 5, StepBudget(60000)) == direct

    def test_index_monotone(self, corpus):
        # a <=_m b stays true at larger indexes
        rng = random.Random(31)
        for _ in range(120):
            a, b = rng.choice(corpus), rng.choice(corpus)
            try:
                if step_down_le(a, b, 2, StepBudget(4000)):
                    assert step_down_le(a, b, 3, StepBudget(60000))
            except BudgetExceededError:
                continue


class TestHardy:
    def test_base(self):
        assert hardy(ZERO, 17) == 17

    def test_omega_doubles(self):
        for k in range(101):
            assert hardy(OMEGA, k, StepBudget(1000)) == 2 * k

    def test_omega_squared(self):
        for x in range(13):
            assert hardy(parse_ordinal("w^{2}"), x, StepBudget(10**6)) == 2**x * x

    def test_successor_identity(self, corpus):
        rng = random.Random(37)
        agreed = 0
        for _ in range(120):
            a = rng.choice(corpus)
            x = rng.randint(0, 3)
            try:
                lhs = hardy(add(a, ONE), x, StepBudget(8000))
                rhs = hardy(a, x + 1, StepBudget(8000))
            except BudgetExceededError:
                continue
            assert lhs == rhs
            agreed += 1
        assert agreed > 30

    def test_limit_identity(self, corpus):
        rng = random.Random(41)
        agreed = 0
        for _ in range(120):
            a = rng.choice(corpus)
            if not a.is_limit:
                continue
            x = rng.randint(0, 3)
            try:
                lhs = hardy(a, x, StepBudget(20000))
                rhs = hardy(fundamental_sequence(a, x), x, StepBudget(20000))
            except BudgetExceededError:
                continue
            assert lhs == rhs
            agreed += 1
        assert agreed > 12

    def test_budget_exhausts_honestly(self):
        with pytest.raises(BudgetExceededError):
            hardy(parse_ordinal("w^{w}"), 6, StepBudget(10000))


class TestHardyValue:
    def test_matches_iterative(self, corpus):
        rng = random.Random(43)
        checked = 0
        for _ in range(120):
            a = rng.choice(corpus)
            x = rng.randint(0, 3)
            try:
                direct = hardy(a, x, StepBudget(8000))
            except BudgetExceededError:
                continue
            try:
                analytic = hardy_value(a, x)
            except MagnitudeCapError:
                continue
            assert analytic == direct
            checked += 1
        assert checked > 25

    def test_closed_forms(self):
        assert hardy_value(parse_ordinal("w^{2}*2"), 4) == 2**64 * 64
        assert hardy_value(parse_ordinal("w^{3}"), 2) == 2048
        assert hardy_value(parse_ordinal("w^{w}"), 2) == 8
        assert hardy_value(parse_ordinal("w*3 + 2"), 5) == 56

    def test_small_arguments(self):
        for text in ("w", "w^{2}", "w^{w}", "w^{w^{w}}"):
            a = parse_ordinal(text)
            assert hardy_value(a, 0) == hardy(a, 0, StepBudget(100000))
            assert hardy_value(a, 1) == hardy(a, 1, StepBudget(100000)) == 2

    def test_zero_argument_limit_exponents(self):
        # w^{w^{w}}[0] bottoms out at a positive ordinal, so the value at 0
        # is not 0
        a = parse_ordinal("w^{w^{w}}")
        assert hardy_value(a, 0) == hardy(a, 0, StepBudget(1000))
        b = parse_ordinal("w^{w}*2")
        assert hardy_value(b, 0) == hardy(b, 0, StepBudget(1000))

    def test_cap_raises_instead_of_hanging(self):
        with pytest.raises(MagnitudeCapError):
            hardy_value(parse_ordinal("w^{w}"), 3)
        with pytest.raises(MagnitudeCapError):
            hardy_value(parse_ordinal("w^{w + 1}"), 2)
        with pytest.raises(MagnitudeCapError):
            hardy_value(parse_ordinal("w^{1000000}"), 5)


class TestTowers:
    def test_e_tower(self):
        assert e_tower(1, 9) == 9
        assert e_tower(2, 3) == 27
        assert e_tower(3, 2) == 16
        with pytest.raises(ValueError):
            e_tower(0, 3)
        with pytest.raises(MagnitudeCapError):
            e_tower(4, 10)

    def test_two_tower(self):
        assert [two_tower(i) for i in range(5)] == [1, 2, 4, 16, 65536]
        with pytest.raises(MagnitudeCapError):
            two_tower(5)

    def test_omega_tower(self):
        w2 = parse_ordinal("w*2")
        assert omega_tower(0, w2) == w2
        assert omega_tower(1, w2) == parse_ordinal("w^{w*2}")
        assert omega_tower(2, ONE) == parse_ordinal("w^{w}")


class TestBudgetPlumbing:
    def test_checked_pow_guards(self):
        assert checked_pow(2, 10) == 1024
        assert checked_pow(0, 0) == 1
        with pytest.raises(MagnitudeCapError):
            checked_pow(2, 10**9)
        with pytest.raises(MagnitudeCapError):
            check_magnitude(1 << 70000)

    def test_budget_spend(self):
        b = StepBudget(3)
        b.spend(2)
        assert b.remaining == 1
        with pytest.raises(BudgetExceededError):
            b.spend(2)

    def test_predecessor_rejects_limits(self):
        with pytest.raises(NonCanonicalError):
            predecessor(OMEGA)

    def test_helpers(self):
        assert from_int(0) == ZERO
        assert from_int(3).to_int() == 3
        assert OMEGA.to_int() is None
        assert omega_power(ONE, 0) == ZERO
        assert OMEGA.is_limit and not OMEGA.is_successor
        assert parse_ordinal("w + 1").is_successor
