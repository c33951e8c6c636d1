"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of (exponent, coefficient) pairs with strictly
decreasing ordinal exponents and positive integer coefficients; the empty
tuple is zero. Provides comparison, ordinary and natural addition, the
left-absorption-free sum (dot_plus), fundamental sequences, the step-down
relation <=_n, Hardy hierarchy evaluation (iterative and closed-form),
exponential towers, and a text grammar.
"""

from dataclasses import dataclass

from .budget import DEFAULT_CAP_BITS, StepBudget, as_budget, check_magnitude, checked_pow
from .errors import (
    BudgetExceededError,
    MagnitudeCapError,
    NonCanonicalError,
    OrdinalParseError,
)


@dataclass(frozen=True)
class Ordinal:
    terms: tuple = ()

    def __post_init__(self):
        prev = None
        for pair in self.terms:
            if len(pair) != 2 or not isinstance(pair[0], Ordinal) or not isinstance(pair[1], int):
                raise NonCanonicalError(f"bad term {pair!r}")
            exp, coeff = pair
            if coeff < 1:
                raise NonCanonicalError(f"coefficient {coeff} must be >= 1")
            if prev is not None and compare(prev, exp) <= 0:
                raise NonCanonicalError("exponents must be strictly decreasing")
            prev = exp

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero

    @property
    def is_single_term(self) -> bool:
        return len(self.terms) == 1

    def to_int(self):
        """The integer value if this ordinal is finite, else None."""
        if not self.terms:
            return 0
        if len(self.terms) == 1 and self.terms[0][0].is_zero:
            return self.terms[0][1]
        return None

    def first_exponent(self) -> "Ordinal":
        return self.terms[0][0]

    def last_exponent(self) -> "Ordinal":
        return self.terms[-1][0]

    def __lt__(self, other):
        return compare(self, other) < 0

    def __le__(self, other):
        return compare(self, other) <= 0

    def __gt__(self, other):
        return compare(self, other) > 0

    def __ge__(self, other):
        return compare(self, other) >= 0

    def __str__(self):
        return print_ordinal(self)

    def __repr__(self):
        return f"Ordinal({print_ordinal(self)!r})"


def _raw(terms: tuple) -> Ordinal:
    # construction bypass for operations that preserve canonicity; the
    # validating constructor stays the public entry point
    o = object.__new__(Ordinal)
    object.__setattr__(o, "terms", terms)
    return o


ZERO = Ordinal()
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def from_int(n: int) -> Ordinal:
    if n < 0:
        raise NonCanonicalError("ordinals are non-negative")
    if n == 0:
        return ZERO
    return Ordinal(((ZERO, n),))


def omega_power(exp: Ordinal, coeff: int = 1) -> Ordinal:
    if coeff == 0:
        return ZERO
    return Ordinal(((exp, coeff),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0, or 1 as a <, ==, > b. Lexicographic on CNF term lists."""
    if a is b:
        return 0
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = 0 if ea is eb else compare(ea, eb)
        if c != 0:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    if len(a.terms) != len(b.terms):
        return -1 if len(a.terms) < len(b.terms) else 1
    return 0


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal addition: terms of a below the leading exponent of b vanish."""
    if b.is_zero:
        return a
    if a.is_zero:
        return b
    lead = b.terms[0][0]
    kept = []
    merged_coeff = 0
    for exp, coeff in a.terms:
        c = compare(exp, lead)
        if c > 0:
            kept.append((exp, coeff))
        elif c == 0:
            merged_coeff = coeff
            break
        else:
            break
    first = (lead, b.terms[0][1] + merged_coeff)
    return _raw(tuple(kept) + (first,) + b.terms[1:])


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Commutative (Hessenberg) sum: merge terms, adding coefficients."""
    out = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        c = compare(ta[i][0], tb[j][0])
        if c > 0:
            out.append(ta[i])
            i += 1
        elif c < 0:
            out.append(tb[j])
            j += 1
        else:
            out.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    out.extend(ta[i:])
    out.extend(tb[j:])
    return _raw(tuple(out))


def dot_plus(gamma: Ordinal, alpha: Ordinal):
    """The sum when no absorption happens, else None.

    Defined exactly when add(gamma, alpha) == natural_sum(gamma, alpha),
    i.e. when gamma's last exponent is >= alpha's first exponent.
    """
    if gamma.is_zero or alpha.is_zero:
        return add(gamma, alpha)
    if compare(gamma.last_exponent(), alpha.first_exponent()) >= 0:
        return add(gamma, alpha)
    return None


def predecessor(alpha: Ordinal) -> Ordinal:
    if not alpha.is_successor:
        raise NonCanonicalError("predecessor of a non-successor")
    exp, coeff = alpha.terms[-1]
    if coeff > 1:
        return _raw(alpha.terms[:-1] + ((exp, coeff - 1),))
    return _raw(alpha.terms[:-1])


def fundamental_sequence(alpha: Ordinal, x: int) -> Ordinal:
    """The x-th member alpha[x] of the standard fundamental sequence.

    Zero maps to zero, successors drop one unit, and for a limit the last
    term w^e*c becomes w^e*(c-1) followed by w^(e-1)*x when e is a
    successor, or by w^(e[x]) when e is a limit.
    """
    if x < 0:
        raise ValueError("index must be a natural number")
    if alpha.is_zero:
        return ZERO
    exp, coeff = alpha.terms[-1]
    if coeff > 1:
        prefix = alpha.terms[:-1] + ((exp, coeff - 1),)
    else:
        prefix = alpha.terms[:-1]
    if exp.is_zero:
        return _raw(prefix)
    if exp.is_successor:
        down = predecessor(exp)
        if x == 0:
            return _raw(prefix)
        return _raw(prefix + ((down, x),))
    down = fundamental_sequence(exp, x)
    return _raw(prefix + ((down, 1),))


def step_down_le(a: Ordinal, b: Ordinal, n: int, budget=None) -> bool:
    """Decide a <=_n b: whether iterating [n] from b reaches a.

    Spends one budget step per iteration; BudgetExceededError is a
    non-answer and propagates.
    """
    budget = as_budget(budget)
    cur = b
    while compare(a, cur) < 0:
        budget.spend()
        cur = fundamental_sequence(cur, n)
    return compare(a, cur) == 0


_PROBE_INDEXES = (2, 3, 4)
_PROBE_STEPS = 30_000


def step_down_le_mono(a: Ordinal, b: Ordinal, n: int, budget=None) -> bool:
    """step_down_le with a shortcut for large n.

    The standard sequences satisfy a <=_m b implies a <=_n b for m <= n,
    so a positive answer at a small probe index settles the question
    without iterating at n (which may be astronomically long). Negative
    probe answers do not transfer; those fall back to direct iteration.
    """
    c = compare(a, b)
    if c == 0:
        return True
    if c > 0:
        return False
    budget = as_budget(budget)
    if n > max(_PROBE_INDEXES):
        for m in _PROBE_INDEXES:
            try:
                if step_down_le(a, b, m, StepBudget(min(_PROBE_STEPS, budget.limit))):
                    return True
            except BudgetExceededError:
                pass
    return step_down_le(a, b, n, budget)


def hardy(alpha: Ordinal, x: int, budget=None) -> int:
    """Hardy hierarchy value H_alpha(x), computed by literal iteration.

    One budget step per descent; use hardy_value for bounds that are
    numerically small but take infeasibly many steps.
    """
    if x < 0:
        raise ValueError("argument must be a natural number")
    budget = as_budget(budget)
    cur, val = alpha, x
    while not cur.is_zero:
        budget.spend()
        if cur.is_successor:
            cur = predecessor(cur)
            val += 1
        else:
            cur = fundamental_sequence(cur, val)
    return val


def hardy_value(alpha: Ordinal, x: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """H_alpha(x) by term decomposition and closed forms.

    Uses H over a clean sum being the composition of the parts, plus
    closed forms for the first three levels: H_{w^0*m}(v) = v+m,
    H_w(v) = 2v, H_{w^2}(v) = 2^v*v. Higher levels unfold by iteration
    and fundamental sequences under the magnitude cap, raising
    MagnitudeCapError as soon as the result is provably too large.
    """
    if x < 0:
        raise ValueError("argument must be a natural number")
    val = check_magnitude(x, cap_bits)
    for exp, coeff in reversed(alpha.terms):
        val = _hardy_single(exp, coeff, val, cap_bits)
    return val


def _hardy_single(exp: Ordinal, coeff: int, v: int, cap_bits: int) -> int:
    # H_{w^exp * coeff}(v)
    if exp.is_zero:
        return check_magnitude(v + coeff, cap_bits)
    if v > 0 and compare(exp, ONE) == 0:
        return check_magnitude(v * checked_pow(2, coeff, cap_bits), cap_bits)
    for _ in range(coeff):
        v = _hardy_power(exp, v, cap_bits)
    return v


def _hardy_power(exp: Ordinal, v: int, cap_bits: int) -> int:
    # H_{w^exp}(v)
    if exp.is_zero:
        return check_magnitude(v + 1, cap_bits)
    if v == 0:
        # w^exp steps down to zero at index 0 unless the exponent is a
        # limit, where the sequence may bottom out at a positive ordinal
        if exp.is_limit:
            return _hardy_power(fundamental_sequence(exp, 0), 0, cap_bits)
        return 0
    if v == 1:
        # the index only grows on successor steps, and from 1 every level
        # collapses to a single doubling
        return 2
    k = exp.to_int()
    if k is not None:
        if k == 1:
            return check_magnitude(2 * v, cap_bits)
        if k == 2:
            return check_magnitude(checked_pow(2, v, cap_bits) * v, cap_bits)
        # level k iterates level k-1 v times; the value is at least the
        # (k-1)-fold iterate of H_{w^2} on v, so refuse doomed cases before
        # recursing k deep
        if _exp_iterate_busts(v, k - 1, cap_bits):
            raise MagnitudeCapError(f"Hardy value at tower level {k} exceeds 2^{cap_bits}")
        out = v
        for _ in range(v):
            out = _hardy_power(from_int(k - 1), out, cap_bits)
        return out
    if exp.is_successor:
        down = predecessor(exp)
        out = v
        for _ in range(v):
            out = _hardy_power(down, out, cap_bits)
        return out
    return _hardy_power(fundamental_sequence(exp, v), v, cap_bits)


def _exp_iterate_busts(v: int, times: int, cap_bits: int) -> bool:
    # does the times-fold iterate of v -> 2^v * v exceed 2^cap_bits
    x = v
    for _ in range(times):
        if x > cap_bits:
            return True
        x = (1 << x) * x
        if x.bit_length() > cap_bits:
            return True
    return False


def e_tower(c: int, x: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """e_1(x) = x and e_{c+1}(x) = x^(e_c(x))."""
    if c < 1:
        raise ValueError("tower height must be >= 1")
    result = check_magnitude(x, cap_bits)
    for _ in range(c - 1):
        result = checked_pow(x, result, cap_bits)
    return result


def two_tower(x: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """Superexponential 2_x with 2_0 = 1 and 2_{x+1} = 2^(2_x)."""
    if x < 0:
        raise ValueError("height must be a natural number")
    result = 1
    for _ in range(x):
        result = checked_pow(2, result, cap_bits)
    return result


def omega_tower(c: int, alpha: Ordinal) -> Ordinal:
    """c-fold w-exponential above alpha."""
    if c < 0:
        raise ValueError("height must be a natural number")
    for _ in range(c):
        alpha = omega_power(alpha)
    return alpha


class _OrdScanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch: str):
        if self.peek() != ch:
            raise OrdinalParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise OrdinalParseError("expected a natural number", start)
        return int(self.text[start:self.pos])


def _parse_term(sc: _OrdScanner):
    ch = sc.peek()
    if ch == "w":
        sc.pos += 1
        exp = ONE
        if sc.peek() == "^":
            sc.take("^")
            sc.take("{")
            exp = _parse_sum(sc)
            sc.take("}")
        coeff = 1
        if sc.peek() == "*":
            sc.take("*")
            coeff = sc.nat()
        return exp, coeff
    if ch.isdigit():
        return ZERO, sc.nat()
    raise OrdinalParseError("expected 'w' or a natural number", sc.pos)


def _parse_sum(sc: _OrdScanner) -> Ordinal:
    pairs = [_parse_term(sc)]
    while sc.peek() == "+":
        sc.take("+")
        pairs.append(_parse_term(sc))
    if len(pairs) == 1 and pairs[0] == (ZERO, 0):
        return ZERO
    for exp, coeff in pairs:
        if coeff == 0:
            raise NonCanonicalError("zero coefficient in a sum")
    for (e1, _), (e2, _) in zip(pairs, pairs[1:]):
        if compare(e1, e2) <= 0:
            raise NonCanonicalError("exponents must strictly decrease left to right")
    return Ordinal(tuple(pairs))


def parse_ordinal(text: str) -> Ordinal:
    sc = _OrdScanner(text)
    result = _parse_sum(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise OrdinalParseError("trailing input", sc.pos)
    return result


def print_ordinal(alpha: Ordinal) -> str:
    if alpha.is_zero:
        return "0"
    parts = []
    for exp, coeff in alpha.terms:
        if exp.is_zero:
            parts.append(str(coeff))
            continue
        if compare(exp, ONE) == 0:
            base = "w"
        else:
            base = "w^{" + print_ordinal(exp) + "}"
        parts.append(base if coeff == 1 else f"{base}*{coeff}")
    return " + ".join(parts)
