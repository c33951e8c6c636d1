import random

import pytest

from proofbench.errors import MagnitudeCapError
from proofbench.growth import (
    GrowthCert,
    cert_dominated_by,
    decode_seq,
    encode_seq,
    least_dominating_level,
    seq_code_limit,
    term_certificate,
    tower_bound_value,
)
from proofbench.formulas import eval_term, num, parse_term, plus, power, times, var
from proofbench.ordinal import e_tower


def _random_term(rng, depth):
    if depth == 0 or rng.random() < 0.45:
        return rng.choice([num(rng.randint(0, 6)), var("x"), var("y")])
    op = rng.choice([plus, times, power])
    return op(_random_term(rng, depth - 1), _random_term(rng, depth - 1))


class TestCertificates:
    def test_base_cases(self):
        assert term_certificate(var("x")) == GrowthCert(0, 1)
        assert term_certificate(num(0)) == GrowthCert(0, 1)
        assert term_certificate(num(1)) == GrowthCert(0, 1)
        assert term_certificate(num(4)) == GrowthCert(0, 2)
        assert term_certificate(num(5)) == GrowthCert(0, 3)

    def test_structure(self):
        x, y = var("x"), var("y")
        assert term_certificate(plus(x, num(1))) == GrowthCert(0, 2)
        assert term_certificate(times(x, y)) == GrowthCert(0, 2)
        assert term_certificate(power(x, y)) == GrowthCert(1, 2)
        # (2^x)^y collapses to one level via the exponent product
        assert term_certificate(power(power(num(2), x), y)).height == 1
        assert term_certificate(power(x, power(num(2), y))).height == 2

    def test_certificates_sound(self):
        rng = random.Random(20260811)
        checked = 0
        for _ in range(300):
            t = _random_term(rng, rng.randint(1, 3))
            cert = term_certificate(t)
            base = rng.randint(2, 5)
            env = {"x": rng.randint(0, base), "y": rng.randint(0, base)}
            try:
                value = eval_term(t, env, cap_bits=4096)
                bound = tower_bound_value(cert, base, cap_bits=4096)
            except MagnitudeCapError:
                continue
            assert value <= bound, (t, cert, env, base)
            checked += 1
        assert checked > 150

    def test_tower_values(self):
        assert tower_bound_value(GrowthCert(0, 3), 2) == 8
        assert tower_bound_value(GrowthCert(1, 1), 2) == 4
        assert tower_bound_value(GrowthCert(1, 2), 3) == 3**9
        assert tower_bound_value(GrowthCert(3, 1), 2) == 65536
        with pytest.raises(MagnitudeCapError):
            tower_bound_value(GrowthCert(4, 1), 2, cap_bits=1024)

    def test_domination_rule_matches_numeric(self):
        # small certificates against towers over small bases, decided both
        # symbolically and by direct evaluation
        for k in range(0, 3):
            for d in range(1, 6):
                cert = GrowthCert(k, d)
                for c in range(2, 6):
                    symbolic = cert_dominated_by(cert, c)
                    numeric = True
                    for base in (2, 3, 4):
                        try:
                            lhs = tower_bound_value(cert, base, cap_bits=200000)
                            rhs = e_tower(c, base, cap_bits=200000)
                        except MagnitudeCapError:
                            continue
                        if lhs > rhs:
                            numeric = False
                    if symbolic:
                        assert numeric, (k, d, c)

    def test_domination_exactness(self):
        # equal heights only tolerate poly 1, one extra level absorbs poly 2
        assert cert_dominated_by(GrowthCert(1, 1), 2)
        assert not cert_dominated_by(GrowthCert(1, 2), 2)
        assert cert_dominated_by(GrowthCert(1, 2), 3)
        assert not cert_dominated_by(GrowthCert(2, 1), 2)
        # T(0,2,B) = B^2 > B yet <= B^B
        assert not cert_dominated_by(GrowthCert(0, 2), 1 + 0)
        assert cert_dominated_by(GrowthCert(0, 2), 2)

    def test_least_level(self):
        assert least_dominating_level(GrowthCert(0, 2)) == 2
        assert least_dominating_level(GrowthCert(0, 1)) == 2
        assert least_dominating_level(GrowthCert(1, 2)) == 3
        assert least_dominating_level(term_certificate(parse_term("x + 1"))) == 2
        cert = GrowthCert(2, 70000)
        c = least_dominating_level(cert)
        assert cert_dominated_by(cert, c)
        assert not cert_dominated_by(cert, c - 1)

    def test_witness_terms_from_fixtures(self):
        # certificates are sound, not tight: x^x^x is numerically below
        # e_4 but certifies at 5 because x^x rounds up to B^(B^2)
        for text, expected in [("x + 1", 2), ("x*2", 2), ("x^x", 3), ("x^x^x", 5)]:
            assert least_dominating_level(term_certificate(parse_term(text))) == expected


class TestSequenceCoding:
    def test_short_lengths(self):
        assert encode_seq([]) == 0
        assert decode_seq(0, 0) == []
        assert decode_seq(3, 0) is None
        assert encode_seq([7]) == 7
        assert decode_seq(7, 1) == [7]

    def test_round_trip(self):
        rng = random.Random(20260812)
        for _ in range(400):
            length = rng.randint(2, 6)
            ys = [rng.randint(0, 30) for _ in range(length)]
            code = encode_seq(ys)
            assert decode_seq(code, length) == ys
            assert code < seq_code_limit(max(ys), length)

    def test_zero_sequences(self):
        assert encode_seq([0, 0, 0]) == 0
        assert decode_seq(0, 3) == [0, 0, 0]

    def test_codes_injective(self):
        seen = {}
        for a in range(12):
            for b in range(12):
                code = encode_seq([a, b])
                assert code not in seen
                seen[code] = (a, b)

    def test_non_codes_rejected(self):
        valid = {encode_seq([a, b]) for a in range(30) for b in range(30)}
        for code in range(500):
            got = decode_seq(code, 2)
            if code in valid:
                assert got is not None and encode_seq(got) == code
            else:
                assert got is None, code

    def test_large_entries(self):
        ys = [2**40, 5, 2**41]
        assert decode_seq(encode_seq(ys), 3) == ys
