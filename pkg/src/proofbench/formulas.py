"""First-order arithmetic syntax over {0, 1, +, *, ^, <, =}.

Terms are trees with big-integer literals; formulas are in negation normal
form with dual atoms, so negation is total and computable. Bounded
quantifiers are primitive: a formula is Delta0 exactly when all its
quantifiers are bounded, and closed Delta0 formulas are decided by finite
search.
"""

from dataclasses import dataclass, field

from .budget import DEFAULT_CAP_BITS, as_budget, check_magnitude, checked_pow
from .errors import (
    FormulaParseError,
    InsufficientBoundsError,
    NotClosedError,
    NotDelta0Error,
    ProofbenchError,
    UnboundVariableError,
)

TERM_OPS = ("num", "var", "plus", "times", "pow")
ATOM_OPS = ("lt", "eq", "nlt", "neq")
FORMULA_OPS = ATOM_OPS + ("and", "or", "exists", "forall", "bexists", "bforall")


class NotPrenexError(ProofbenchError):
    code = "not_prenex"


@dataclass(frozen=True)
class Term:
    op: str
    args: tuple = ()
    value: int = None
    name: str = None

    def __post_init__(self):
        if self.op not in TERM_OPS:
            raise ValueError(f"unknown term op {self.op}")

    def __repr__(self):
        return f"Term({print_term(self)!r})"


def num(n: int) -> Term:
    if n < 0:
        raise ValueError("numerals are non-negative")
    return Term("num", value=n)


def var(name: str) -> Term:
    return Term("var", name=name)


def plus(a: Term, b: Term) -> Term:
    return Term("plus", (a, b))


def times(a: Term, b: Term) -> Term:
    return Term("times", (a, b))


def power(a: Term, b: Term) -> Term:
    return Term("pow", (a, b))


ZERO_T = num(0)
ONE_T = num(1)


@dataclass(frozen=True)
class Formula:
    op: str
    terms: tuple = ()
    parts: tuple = ()
    bind: str = None
    bound: Term = None

    def __post_init__(self):
        if self.op not in FORMULA_OPS:
            raise ValueError(f"unknown formula op {self.op}")

    def __repr__(self):
        return f"Formula({print_formula(self)!r})"


def lt(a, b):
    return Formula("lt", terms=(a, b))


def eq(a, b):
    return Formula("eq", terms=(a, b))


def nlt(a, b):
    return Formula("nlt", terms=(a, b))


def neq(a, b):
    return Formula("neq", terms=(a, b))


def conj(a, b):
    return Formula("and", parts=(a, b))


def disj(a, b):
    return Formula("or", parts=(a, b))


def exists(x: str, body: Formula) -> Formula:
    return Formula("exists", parts=(body,), bind=x)


def forall(x: str, body: Formula) -> Formula:
    return Formula("forall", parts=(body,), bind=x)


def bexists(x: str, bound: Term, body: Formula) -> Formula:
    return Formula("bexists", parts=(body,), bind=x, bound=bound)


def bforall(x: str, bound: Term, body: Formula) -> Formula:
    return Formula("bforall", parts=(body,), bind=x, bound=bound)


def term_free_vars(t: Term) -> frozenset:
    if t.op == "var":
        return frozenset((t.name,))
    if t.op == "num":
        return frozenset()
    out = frozenset()
    for a in t.args:
        out |= term_free_vars(a)
    return out


def free_vars(f: Formula) -> frozenset:
    if f.op in ATOM_OPS:
        return term_free_vars(f.terms[0]) | term_free_vars(f.terms[1])
    if f.op in ("and", "or"):
        return free_vars(f.parts[0]) | free_vars(f.parts[1])
    out = free_vars(f.parts[0]) - {f.bind}
    if f.bound is not None:
        out |= term_free_vars(f.bound)
    return out


def is_closed(f: Formula) -> bool:
    return not free_vars(f)


def is_delta0(f: Formula) -> bool:
    if f.op in ATOM_OPS:
        return True
    if f.op in ("and", "or"):
        return all(is_delta0(p) for p in f.parts)
    if f.op in ("exists", "forall"):
        return False
    return is_delta0(f.parts[0])


def eval_term(t: Term, env: dict, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    if t.op == "num":
        return t.value
    if t.op == "var":
        if t.name not in env:
            raise UnboundVariableError(f"variable {t.name} not in environment")
        return env[t.name]
    a = eval_term(t.args[0], env, cap_bits)
    b = eval_term(t.args[1], env, cap_bits)
    if t.op == "plus":
        return check_magnitude(a + b, cap_bits)
    if t.op == "times":
        return check_magnitude(a * b, cap_bits)
    return checked_pow(a, b, cap_bits)


def eval_delta0(f: Formula, env: dict, cap_bits: int = DEFAULT_CAP_BITS, budget=None) -> bool:
    """Standard-model truth of a Delta0 formula under env.

    Bounded quantifiers enumerate finitely with short-circuiting; the
    optional budget charges one step per quantifier instance.
    """
    budget = as_budget(budget)
    return _eval_d0(f, env, cap_bits, budget)


def _eval_d0(f, env, cap_bits, budget):
    op = f.op
    if op == "lt":
        return eval_term(f.terms[0], env, cap_bits) < eval_term(f.terms[1], env, cap_bits)
    if op == "eq":
        return eval_term(f.terms[0], env, cap_bits) == eval_term(f.terms[1], env, cap_bits)
    if op == "nlt":
        return not eval_term(f.terms[0], env, cap_bits) < eval_term(f.terms[1], env, cap_bits)
    if op == "neq":
        return eval_term(f.terms[0], env, cap_bits) != eval_term(f.terms[1], env, cap_bits)
    if op == "and":
        return _eval_d0(f.parts[0], env, cap_bits, budget) and _eval_d0(
            f.parts[1], env, cap_bits, budget
        )
    if op == "or":
        return _eval_d0(f.parts[0], env, cap_bits, budget) or _eval_d0(
            f.parts[1], env, cap_bits, budget
        )
    if op in ("exists", "forall"):
        raise NotDelta0Error("unbounded quantifier in Delta0 evaluation")
    limit = eval_term(f.bound, env, cap_bits)
    inner = dict(env)
    if op == "bexists":
        for v in range(limit):
            budget.spend()
            inner[f.bind] = v
            if _eval_d0(f.parts[0], inner, cap_bits, budget):
                return True
        return False
    for v in range(limit):
        budget.spend()
        inner[f.bind] = v
        if not _eval_d0(f.parts[0], inner, cap_bits, budget):
            return False
    return True


def degree(f: Formula) -> int:
    """Count of unbounded quantifiers along the deepest path.

    Delta0 formulas have degree 0; each unbounded quantifier adds one;
    connectives take the max; bounded quantifiers pass through.
    """
    if f.op in ATOM_OPS:
        return 0
    if f.op in ("and", "or"):
        return max(degree(f.parts[0]), degree(f.parts[1]))
    if f.op in ("exists", "forall"):
        return degree(f.parts[0]) + 1
    return degree(f.parts[0])


def prenex_class(f: Formula):
    """(q, kind) for a prenex formula: alternation-block count and the
    leading quantifier kind ('sigma' | 'pi' | 'delta0')."""
    blocks = 0
    last = None
    cur = f
    while cur.op in ("exists", "forall"):
        if cur.op != last:
            blocks += 1
            if last is None:
                first = cur.op
            last = cur.op
        cur = cur.parts[0]
    if not is_delta0(cur):
        raise NotPrenexError("matrix is not Delta0")
    if blocks == 0:
        return 0, "delta0"
    return blocks, ("sigma" if first == "exists" else "pi")


def prenex_prefix(f: Formula):
    """The quantifier prefix as a list of (kind, var) plus the Delta0 matrix."""
    prefix = []
    cur = f
    while cur.op in ("exists", "forall"):
        prefix.append((cur.op, cur.bind))
        cur = cur.parts[0]
    if not is_delta0(cur):
        raise NotPrenexError("matrix is not Delta0")
    return prefix, cur


def negate(f: Formula) -> Formula:
    op = f.op
    if op == "lt":
        return Formula("nlt", terms=f.terms)
    if op == "nlt":
        return Formula("lt", terms=f.terms)
    if op == "eq":
        return Formula("neq", terms=f.terms)
    if op == "neq":
        return Formula("eq", terms=f.terms)
    if op == "and":
        return Formula("or", parts=(negate(f.parts[0]), negate(f.parts[1])))
    if op == "or":
        return Formula("and", parts=(negate(f.parts[0]), negate(f.parts[1])))
    dual = {"exists": "forall", "forall": "exists", "bexists": "bforall", "bforall": "bexists"}
    return Formula(dual[op], parts=(negate(f.parts[0]),), bind=f.bind, bound=f.bound)


def term_substitute(t: Term, x: str, s: Term) -> Term:
    if t.op == "var":
        return s if t.name == x else t
    if t.op == "num":
        return t
    return Term(t.op, tuple(term_substitute(a, x, s) for a in t.args))


def _fresh(base: str, taken) -> str:
    i = 1
    cand = f"{base}_{i}"
    while cand in taken:
        i += 1
        cand = f"{base}_{i}"
    return cand


def substitute(f: Formula, x: str, s: Term) -> Formula:
    """Capture-avoiding substitution of term s for free occurrences of x."""
    if f.op in ATOM_OPS:
        return Formula(f.op, terms=tuple(term_substitute(t, x, s) for t in f.terms))
    if f.op in ("and", "or"):
        return Formula(f.op, parts=tuple(substitute(p, x, s) for p in f.parts))
    new_bound = term_substitute(f.bound, x, s) if f.bound is not None else None
    if f.bind == x:
        # bound occurrences untouched; only the bound term (outside the
        # binder's scope) is substituted
        return Formula(f.op, parts=f.parts, bind=f.bind, bound=new_bound)
    body = f.parts[0]
    if f.bind in term_free_vars(s) and x in free_vars(body):
        taken = free_vars(body) | term_free_vars(s) | {x}
        renamed = _fresh(f.bind, taken)
        body = substitute(body, f.bind, var(renamed))
        return Formula(f.op, parts=(substitute(body, x, s),), bind=renamed, bound=new_bound)
    return Formula(f.op, parts=(substitute(body, x, s),), bind=f.bind, bound=new_bound)


def relativize(f: Formula, bounds) -> Formula:
    """Bound each prefix quantifier by the corresponding value.

    Consumes bounds left to right, one per quantifier; surplus bounds are
    ignored. The result is Delta0.
    """
    if f.op in ("exists", "forall"):
        if not bounds:
            raise InsufficientBoundsError("quantifier prefix longer than bound list")
        inner = relativize(f.parts[0], bounds[1:])
        kind = "bexists" if f.op == "exists" else "bforall"
        return Formula(kind, parts=(inner,), bind=f.bind, bound=num(bounds[0]))
    if not is_delta0(f):
        raise NotPrenexError("quantifier below a connective in prenex prefix")
    return f


def normalize_closed(f: Formula, cap_bits: int = DEFAULT_CAP_BITS) -> Formula:
    """Fold closed subterms to numerals, the identity used to compare
    instances built by different routes. Terms whose value exceeds the cap
    are left as is."""
    if f.op in ATOM_OPS:
        return Formula(f.op, terms=tuple(_norm_term(t, cap_bits) for t in f.terms))
    if f.op in ("and", "or"):
        return Formula(f.op, parts=tuple(normalize_closed(p, cap_bits) for p in f.parts))
    nb = _norm_term(f.bound, cap_bits) if f.bound is not None else None
    return Formula(f.op, parts=(normalize_closed(f.parts[0], cap_bits),), bind=f.bind, bound=nb)


def _norm_term(t: Term, cap_bits: int) -> Term:
    if t.op == "num":
        return t
    if not term_free_vars(t):
        try:
            return num(eval_term(t, {}, cap_bits))
        except ProofbenchError:
            pass
    if t.op == "var":
        return t
    return Term(t.op, tuple(_norm_term(a, cap_bits) for a in t.args))


# ---------------------------------------------------------------------------
# sequents

def sequent(*formulas) -> frozenset:
    return frozenset(formulas)


def print_sequent(s) -> str:
    return ", ".join(sorted(print_formula(f) for f in s))


def parse_sequent(text: str):
    parts = _split_top_level(text)
    return frozenset(parse_formula(p) for p in parts if p.strip())


def _split_top_level(text: str):
    out, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out


# ---------------------------------------------------------------------------
# text syntax

_RESERVED = {"E", "A"}


class _Scanner:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, ch):
        if self.peek() != ch:
            raise FormulaParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def try_take(self, ch):
        if self.peek() == ch:
            self.pos += 1
            return True
        return False

    def ident(self):
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (self.text[self.pos].isalpha() or self.text[self.pos] == "_"):
            self.pos += 1
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
        if self.pos == start:
            raise FormulaParseError("expected identifier", start)
        return self.text[start:self.pos]

    def peek_ident(self):
        save = self.pos
        try:
            name = self.ident()
        except FormulaParseError:
            return None
        self.pos = save
        return name


def _parse_term_atom(sc: _Scanner) -> Term:
    ch = sc.peek()
    if ch == "(":
        sc.take("(")
        t = _parse_term_sum(sc)
        sc.take(")")
        return t
    if ch.isdigit():
        start = sc.pos
        while sc.pos < len(sc.text) and sc.text[sc.pos].isdigit():
            sc.pos += 1
        return num(int(sc.text[start:sc.pos]))
    name = sc.ident()
    if name in _RESERVED:
        raise FormulaParseError(f"{name} is reserved", sc.pos)
    return var(name)


def _parse_term_pow(sc: _Scanner) -> Term:
    base = _parse_term_atom(sc)
    if sc.peek() == "^":
        sc.take("^")
        return power(base, _parse_term_pow(sc))
    return base


def _parse_term_prod(sc: _Scanner) -> Term:
    t = _parse_term_pow(sc)
    while sc.peek() == "*":
        sc.take("*")
        t = times(t, _parse_term_pow(sc))
    return t


def _parse_term_sum(sc: _Scanner) -> Term:
    t = _parse_term_prod(sc)
    while sc.peek() == "+":
        sc.take("+")
        t = plus(t, _parse_term_prod(sc))
    return t


def parse_term(text: str) -> Term:
    sc = _Scanner(text)
    t = _parse_term_sum(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise FormulaParseError("trailing input", sc.pos)
    return t


def _parse_atom_after(sc: _Scanner, left: Term) -> Formula:
    ch = sc.peek()
    if ch == "<":
        sc.take("<")
        return lt(left, _parse_term_sum(sc))
    if ch == "=":
        sc.take("=")
        return eq(left, _parse_term_sum(sc))
    raise FormulaParseError("expected < or =", sc.pos)


def _parse_formula_unit(sc: _Scanner) -> Formula:
    ch = sc.peek()
    if ch == "~":
        sc.take("~")
        wrapped = sc.try_take("(")
        f = _parse_atom_after(sc, _parse_term_sum(sc))
        if wrapped:
            sc.take(")")
        return negate(f)
    name = sc.peek_ident()
    if name in ("E", "A"):
        sc.ident()
        v = sc.ident()
        if v in _RESERVED:
            raise FormulaParseError(f"{v} is reserved", sc.pos)
        bound = None
        if sc.peek() == "<":
            sc.take("<")
            bound = _parse_term_sum(sc)
        sc.take(".")
        body = _parse_formula(sc)
        if name == "E":
            return exists(v, body) if bound is None else bexists(v, bound, body)
        return forall(v, body) if bound is None else bforall(v, bound, body)
    if ch == "(":
        save = sc.pos
        sc.take("(")
        try:
            f = _parse_formula(sc)
            sc.take(")")
            return f
        except FormulaParseError:
            sc.pos = save
    return _parse_atom_after(sc, _parse_term_sum(sc))


def _parse_conj(sc: _Scanner) -> Formula:
    f = _parse_formula_unit(sc)
    while sc.peek() == "&":
        sc.take("&")
        f = conj(f, _parse_formula_unit(sc))
    return f


def _parse_formula(sc: _Scanner) -> Formula:
    f = _parse_conj(sc)
    while sc.peek() == "|":
        sc.take("|")
        f = disj(f, _parse_conj(sc))
    return f


def parse_formula(text: str) -> Formula:
    sc = _Scanner(text)
    f = _parse_formula(sc)
    sc.skip_ws()
    if sc.pos != len(sc.text):
        raise FormulaParseError("trailing input", sc.pos)
    return f


_TERM_PREC = {"plus": 1, "times": 2, "pow": 3}


def print_term(t: Term, prec: int = 0) -> str:
    if t.op == "num":
        return str(t.value)
    if t.op == "var":
        return t.name
    mine = _TERM_PREC[t.op]
    symbol = {"plus": " + ", "times": "*", "pow": "^"}[t.op]
    if t.op == "pow":
        s = print_term(t.args[0], mine + 1) + symbol + print_term(t.args[1], mine)
    else:
        s = print_term(t.args[0], mine) + symbol + print_term(t.args[1], mine + 1)
    return f"({s})" if mine < prec else s


def print_formula(f: Formula) -> str:
    op = f.op
    if op == "lt":
        return f"{print_term(f.terms[0])} < {print_term(f.terms[1])}"
    if op == "eq":
        return f"{print_term(f.terms[0])} = {print_term(f.terms[1])}"
    if op == "nlt":
        return f"~({print_term(f.terms[0])} < {print_term(f.terms[1])})"
    if op == "neq":
        return f"~({print_term(f.terms[0])} = {print_term(f.terms[1])})"
    if op in ("and", "or"):
        glue = " & " if op == "and" else " | "
        return (
            _print_operand(f.parts[0], op, right=False)
            + glue
            + _print_operand(f.parts[1], op, right=True)
        )
    letter = "E" if op in ("bexists", "exists") else "A"
    head = f"{letter} {f.bind}"
    if f.bound is not None:
        head += f"<{print_term(f.bound)}"
    return f"{head}. {print_formula(f.parts[0])}"


def _print_operand(f: Formula, parent: str, right: bool) -> str:
    s = print_formula(f)
    if f.op in ("bexists", "bforall", "exists", "forall"):
        return f"({s})"
    if parent == "and" and f.op == "or":
        return f"({s})"
    if right and f.op == parent:
        # the parser is left-associative, keep right nesting explicit
        return f"({s})"
    return s
