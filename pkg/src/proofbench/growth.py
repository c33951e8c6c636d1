"""Symbolic growth certificates for arithmetic terms, and sequence coding.

A certificate (height k, poly d) for a term t with free variables promises
eval(t) <= T(k, d, B) whenever every variable value is at most B and B >= 2,
where T(0, d, B) = B^d and T(k+1, d, B) = B^T(k, d, B). Certificates compose
structurally, so the promise is provable without evaluating anything, and the
domination test against base-B exponential towers is a two-line arithmetic
criterion.
"""

from dataclasses import dataclass

from .budget import DEFAULT_CAP_BITS, checked_pow
from .formulas import Term

__all__ = [
    "GrowthCert",
    "term_certificate",
    "tower_bound_value",
    "cert_dominated_by",
    "least_dominating_level",
    "encode_seq",
    "decode_seq",
    "seq_code_limit",
]


@dataclass(frozen=True)
class GrowthCert:
    height: int
    poly: int

    def __post_init__(self):
        if self.height < 0 or self.poly < 1:
            raise ValueError("certificate needs height >= 0 and poly >= 1")


def _clg(n: int) -> int:
    """Least p >= 1 with n <= 2^p, hence n <= B^p for every B >= 2."""
    return max(1, (n - 1).bit_length())


def term_certificate(t: Term) -> GrowthCert:
    if t.op == "num":
        return GrowthCert(0, _clg(t.value))
    if t.op == "var":
        return GrowthCert(0, 1)
    a = term_certificate(t.args[0])
    b = term_certificate(t.args[1])
    if t.op == "plus":
        h = max(a.height, b.height)
        return GrowthCert(h, max(a.poly, b.poly) + 1)
    if t.op == "times":
        if a.height == 0 and b.height == 0:
            return GrowthCert(0, a.poly + b.poly)
        return GrowthCert(max(a.height, b.height), max(a.poly, b.poly) + 1)
    # pow: a^b <= B^(log_B(T_a) * T_b); the log is exactly one tower level
    # down when a's certificate already has height, else the constant d_a
    if a.height >= 1:
        log_a = GrowthCert(a.height - 1, a.poly)
    else:
        log_a = GrowthCert(0, _clg(a.poly))
    if log_a.height == 0 and b.height == 0:
        exponent = GrowthCert(0, log_a.poly + b.poly)
    else:
        exponent = GrowthCert(max(log_a.height, b.height), max(log_a.poly, b.poly) + 1)
    return GrowthCert(exponent.height + 1, exponent.poly)


def tower_bound_value(cert: GrowthCert, base: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """T(height, poly, base), raising on magnitude overflow."""
    if base < 2:
        raise ValueError("tower base must be at least 2")
    v = checked_pow(base, cert.poly, cap_bits)
    for _ in range(cert.height):
        v = checked_pow(base, v, cap_bits)
    return v


def _tower2_reaches(levels: int, target: int) -> bool:
    """e_levels(2) >= target, computed with early exit (e_1(2) = 2)."""
    v = 2
    for _ in range(levels - 1):
        if v >= target:
            return True
        if v > 64:
            # 2^v already dwarfs any certificate polynomial
            return True
        v = 2**v
    return v >= target


def cert_dominated_by(cert: GrowthCert, level: int) -> bool:
    """Whether T(height, poly, B) <= e_level(B) for every B >= 2.

    Exact criterion: with the tower e_1(B) = B, e_{j+1}(B) = B^{e_j(B)},
    stripping the common height leaves poly against a residual 2-tower;
    equality of heights only tolerates poly = 1.
    """
    k, d = cert.height, cert.poly
    if level - 1 == k:
        return d == 1
    if level - 1 >= k + 1:
        return _tower2_reaches(level - 1 - k, d)
    return False


def least_dominating_level(cert: GrowthCert) -> int:
    """Least c >= 2 with cert_dominated_by(cert, c)."""
    c = 2
    while not cert_dominated_by(cert, c):
        c += 1
    return c


# ---------------------------------------------------------------------------
# sequence coding
#
# Length ell >= 2 sequences pack as sum(y_i * (B+1)^i) + B * (B+1)^ell with
# B = max(y), which is self-delimiting for fixed ell: the base is recovered
# as the unique b with (b-1) * b^ell <= code < b^(ell+1). Lengths 0 and 1
# use 0 and the identity.


def encode_seq(values) -> int:
    values = list(values)
    if any(v < 0 for v in values):
        raise ValueError("sequence entries must be non-negative")
    if not values:
        return 0
    if len(values) == 1:
        return values[0]
    top = max(values)
    base = top + 1
    code = top * base ** len(values)
    for i, v in enumerate(values):
        code += v * base**i
    return code


def seq_code_limit(max_entry: int, length: int) -> int:
    """Strict upper bound on any length-`length` code with entries <= max_entry."""
    if length <= 1:
        return max_entry + 1
    return (max_entry + 1) ** (length + 1)


def _iroot(n: int, k: int) -> int:
    """Floor of the k-th root, exact over big integers."""
    if n < 0 or k < 1:
        raise ValueError
    if n in (0, 1) or k == 1:
        return n
    hi = 1 << (n.bit_length() // k + 1)
    lo = 0
    while lo < hi - 1:
        mid = (lo + hi) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid
    return lo


def decode_seq(code: int, length: int):
    """Inverse of encode_seq at the given length, or None for non-codes."""
    if code < 0:
        return None
    if length == 0:
        return [] if code == 0 else None
    if length == 1:
        return [code]
    if code == 0:
        return [0] * length
    base = _iroot(code, length + 1) + 1
    while base >= 2 and (base - 1) * base**length > code:
        base -= 1
    while code >= base ** (length + 1):
        base += 1
    if base < 2 or not (base - 1) * base**length <= code < base ** (length + 1):
        return None
    rest = code - (base - 1) * base**length
    out = []
    for _ in range(length):
        rest, digit = divmod(rest, base)
        out.append(digit)
    if rest != 0 or max(out) != base - 1:
        return None
    return out
