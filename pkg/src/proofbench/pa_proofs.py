"""One-sided sequent-calculus derivations for first-order arithmetic.

Sequents are finite formula sets read disjunctively. Leaves close on a
logical axiom pair, a true closed Delta0 member, or a positive instance of
a registered Pi1 axiom. Internal rules keep the full conclusion in every
premise and add the displayed side formulas, so premise sequents are exact
set extensions and the checker can recompute them.
"""

import itertools
import random
from dataclasses import dataclass

from .budget import DEFAULT_CAP_BITS
from .errors import MagnitudeCapError, ProofbenchError, ProofFileError, UnboundVariableError
from .formulas import (
    Formula,
    Term,
    degree,
    eval_delta0,
    eval_term,
    free_vars,
    is_closed,
    is_delta0,
    lt,
    eq,
    negate,
    num,
    parse_formula,
    parse_sequent,
    parse_term,
    plus,
    power,
    prenex_class,
    print_formula,
    print_sequent,
    print_term,
    substitute,
    term_free_vars,
    term_substitute,
    times,
    var,
)
from .formulas import NotPrenexError
from .growth import encode_seq, least_dominating_level, term_certificate
from .ordinal import e_tower

RULES = (
    "axiom_logical",
    "axiom_pi1",
    "true_delta0",
    "and",
    "or",
    "exists",
    "forall",
    "cut",
    "induction",
)

LEAF_RULES = ("axiom_logical", "axiom_pi1", "true_delta0")


@dataclass(frozen=True)
class PaDerivation:
    rule: str
    conclusion: frozenset
    premises: tuple = ()
    principal: Formula = None
    witness: Term = None
    eigen: str = None
    pick: int = None
    cut_formula: Formula = None
    axiom_id: str = None
    axiom_terms: tuple = ()
    leaf_formula: Formula = None
    ind_var: str = None
    ind_formula: Formula = None
    ind_term: Term = None

    def __post_init__(self):
        if self.rule not in RULES:
            raise ValueError(f"unknown rule {self.rule}")


@dataclass(frozen=True)
class PaViolation:
    path: tuple
    rule: str
    reason: str

    def __str__(self):
        where = "/".join(str(i) for i in self.path) or "root"
        return f"{self.rule} at {where}: {self.reason}"


# ---------------------------------------------------------------------------
# the Pi1 axiom registry: universal closures of true atomic identities,
# enough to close the recursion equations for +, *, ^ and the order facts
# the bundled derivations lean on

_u, _v = var("u"), var("v")

AXIOM_REGISTRY = {
    "eq_refl": (("u",), eq(_u, _u)),
    "lt_succ": (("u",), lt(_u, plus(_u, num(1)))),
    "plus_zero": (("u",), eq(plus(_u, num(0)), _u)),
    "plus_succ": (
        ("u", "v"),
        eq(plus(_u, plus(_v, num(1))), plus(plus(_u, _v), num(1))),
    ),
    "times_zero": (("u",), eq(times(_u, num(0)), num(0))),
    "times_succ": (
        ("u", "v"),
        eq(times(_u, plus(_v, num(1))), plus(times(_u, _v), _u)),
    ),
    "pow_zero": (("u",), eq(power(_u, num(0)), num(1))),
    "pow_succ": (
        ("u", "v"),
        eq(power(_u, plus(_v, num(1))), times(power(_u, _v), _u)),
    ),
}


def axiom_instance(axiom_id: str, terms) -> Formula:
    if axiom_id not in AXIOM_REGISTRY:
        raise ProofbenchError(f"unknown axiom {axiom_id}")
    names, matrix = AXIOM_REGISTRY[axiom_id]
    if len(terms) != len(names):
        raise ProofbenchError(
            f"axiom {axiom_id} takes {len(names)} terms, got {len(terms)}"
        )
    out = matrix
    for name, t in zip(names, terms):
        out = substitute(out, name, t)
    return out


# ---------------------------------------------------------------------------
# node builders

def axiom_logical(conclusion) -> PaDerivation:
    return PaDerivation("axiom_logical", frozenset(conclusion))


def axiom_pi1(conclusion, axiom_id, terms) -> PaDerivation:
    return PaDerivation(
        "axiom_pi1", frozenset(conclusion), axiom_id=axiom_id, axiom_terms=tuple(terms)
    )


def true_delta0(conclusion, formula) -> PaDerivation:
    return PaDerivation("true_delta0", frozenset(conclusion), leaf_formula=formula)


def and_rule(conclusion, principal, left, right) -> PaDerivation:
    return PaDerivation(
        "and", frozenset(conclusion), premises=(left, right), principal=principal
    )


def or_rule(conclusion, principal, pick, premise) -> PaDerivation:
    return PaDerivation(
        "or", frozenset(conclusion), premises=(premise,), principal=principal, pick=pick
    )


def exists_rule(conclusion, principal, witness, premise) -> PaDerivation:
    return PaDerivation(
        "exists",
        frozenset(conclusion),
        premises=(premise,),
        principal=principal,
        witness=witness,
    )


def forall_rule(conclusion, principal, eigen, premise) -> PaDerivation:
    return PaDerivation(
        "forall",
        frozenset(conclusion),
        premises=(premise,),
        principal=principal,
        eigen=eigen,
    )


def cut_rule(conclusion, cut_formula, pos_premise, neg_premise) -> PaDerivation:
    return PaDerivation(
        "cut",
        frozenset(conclusion),
        premises=(pos_premise, neg_premise),
        cut_formula=cut_formula,
    )


def induction_rule(conclusion, ind_var, ind_formula, ind_term, base, step, side) -> PaDerivation:
    return PaDerivation(
        "induction",
        frozenset(conclusion),
        premises=(base, step, side),
        ind_var=ind_var,
        ind_formula=ind_formula,
        ind_term=ind_term,
    )


# ---------------------------------------------------------------------------
# validity

def sequent_free_vars(s) -> frozenset:
    out = frozenset()
    for f in s:
        out |= free_vars(f)
    return out


def check_pa_derivation(p: PaDerivation):
    """None when every node is locally valid, else the first PaViolation."""
    return _check_node(p, ())


def _bad(path, rule, reason):
    return PaViolation(path, rule, reason)


def _premise_count(path, p, n):
    if len(p.premises) != n:
        return _bad(path, p.rule, f"expected {n} premises, found {len(p.premises)}")
    return None


def _check_node(p, path):
    g = p.conclusion
    if p.rule in LEAF_RULES:
        bad = _premise_count(path, p, 0)
        if bad:
            return bad
    if p.rule == "axiom_logical":
        if not any(negate(f) in g for f in g):
            return _bad(path, p.rule, "no complementary pair in the sequent")
    elif p.rule == "axiom_pi1":
        if p.axiom_id not in AXIOM_REGISTRY:
            return _bad(path, p.rule, f"unknown axiom {p.axiom_id}")
        names, _ = AXIOM_REGISTRY[p.axiom_id]
        if len(p.axiom_terms) != len(names):
            return _bad(path, p.rule, f"axiom {p.axiom_id} takes {len(names)} terms")
        if axiom_instance(p.axiom_id, p.axiom_terms) not in g:
            return _bad(path, p.rule, "axiom instance not in the sequent")
    elif p.rule == "true_delta0":
        f = p.leaf_formula
        if f is None or f not in g:
            return _bad(path, p.rule, "designated formula not in the sequent")
        if not is_delta0(f):
            return _bad(path, p.rule, "designated formula is not Delta0")
        if not is_closed(f):
            return _bad(path, p.rule, "designated formula is not closed")
        if not eval_delta0(f, {}):
            return _bad(path, p.rule, "designated formula is false")
    elif p.rule == "and":
        bad = _premise_count(path, p, 2)
        if bad:
            return bad
        a = p.principal
        if a is None or a not in g or a.op != "and":
            return _bad(path, p.rule, "principal conjunction not in the sequent")
        for i in range(2):
            want = g | {a.parts[i]}
            if p.premises[i].conclusion != want:
                return _bad(path, p.rule, f"premise {i} sequent mismatch")
    elif p.rule == "or":
        bad = _premise_count(path, p, 1)
        if bad:
            return bad
        a = p.principal
        if a is None or a not in g or a.op != "or":
            return _bad(path, p.rule, "principal disjunction not in the sequent")
        if p.pick not in (0, 1):
            return _bad(path, p.rule, "pick must be 0 or 1")
        if p.premises[0].conclusion != g | {a.parts[p.pick]}:
            return _bad(path, p.rule, "premise sequent mismatch")
    elif p.rule == "exists":
        bad = _premise_count(path, p, 1)
        if bad:
            return bad
        a = p.principal
        if a is None or a not in g or a.op != "exists":
            return _bad(path, p.rule, "principal existential not in the sequent")
        if p.witness is None:
            return _bad(path, p.rule, "missing witness term")
        inst = substitute(a.parts[0], a.bind, p.witness)
        if p.premises[0].conclusion != g | {inst}:
            return _bad(path, p.rule, "premise sequent mismatch")
    elif p.rule == "forall":
        bad = _premise_count(path, p, 1)
        if bad:
            return bad
        a = p.principal
        if a is None or a not in g or a.op != "forall":
            return _bad(path, p.rule, "principal universal not in the sequent")
        if not p.eigen:
            return _bad(path, p.rule, "missing eigenvariable")
        if p.eigen in sequent_free_vars(g):
            return _bad(path, p.rule, f"eigenvariable {p.eigen} occurs free in the sequent")
        inst = substitute(a.parts[0], a.bind, var(p.eigen))
        if p.premises[0].conclusion != g | {inst}:
            return _bad(path, p.rule, "premise sequent mismatch")
    elif p.rule == "cut":
        bad = _premise_count(path, p, 2)
        if bad:
            return bad
        c = p.cut_formula
        if c is None:
            return _bad(path, p.rule, "missing cut formula")
        if p.premises[0].conclusion != g | {c}:
            return _bad(path, p.rule, "positive premise sequent mismatch")
        if p.premises[1].conclusion != g | {negate(c)}:
            return _bad(path, p.rule, "negative premise sequent mismatch")
    elif p.rule == "induction":
        bad = _premise_count(path, p, 3)
        if bad:
            return bad
        a, fa, t = p.ind_var, p.ind_formula, p.ind_term
        if not a or fa is None or t is None:
            return _bad(path, p.rule, "missing induction payload")
        try:
            prenex_class(fa)
        except NotPrenexError:
            return _bad(path, p.rule, "induction formula is not prenex")
        if a in sequent_free_vars(g):
            return _bad(path, p.rule, f"induction variable {a} occurs free in the sequent")
        if a in term_free_vars(t):
            return _bad(path, p.rule, f"induction variable {a} occurs in the induction term")
        base = g | {substitute(fa, a, num(0))}
        step = g | {negate(fa), substitute(fa, a, plus(var(a), num(1)))}
        side = g | {negate(substitute(fa, a, t))}
        for i, want in enumerate((base, step, side)):
            if p.premises[i].conclusion != want:
                return _bad(path, p.rule, f"premise {i} sequent mismatch")
    for i, sub in enumerate(p.premises):
        bad = _check_node(sub, path + (i,))
        if bad:
            return bad
    return None


def depth(p: PaDerivation) -> int:
    if not p.premises:
        return 0
    return 1 + max(depth(q) for q in p.premises)


def cut_free(p: PaDerivation) -> bool:
    if p.rule == "cut":
        return False
    return all(cut_free(q) for q in p.premises)


def all_nodes(p: PaDerivation):
    yield p
    for q in p.premises:
        yield from all_nodes(q)


# ---------------------------------------------------------------------------
# numeral instantiation

def _bound_names(p: PaDerivation) -> frozenset:
    names = frozenset()
    for node in all_nodes(p):
        if node.rule == "forall":
            names |= {node.eigen}
        elif node.rule == "induction":
            names |= {node.ind_var}
    return names


def instantiate(p: PaDerivation, assignments: dict) -> PaDerivation:
    """Substitute numerals for free variables of the end sequent, everywhere."""
    allowed = sequent_free_vars(p.conclusion)
    blocked = _bound_names(p)
    for name in assignments:
        if name in blocked:
            raise UnboundVariableError(f"{name} is a bound variable of the derivation")
        if name not in allowed:
            raise UnboundVariableError(f"{name} is not free in the end sequent")
    numerals = {name: num(value) for name, value in assignments.items()}
    return _subst_tree(p, numerals)


def _subst_tree(p, numerals):
    def sub_f(f):
        for name, n in numerals.items():
            f = substitute(f, name, n)
        return f

    def sub_t(t):
        for name, n in numerals.items():
            t = term_substitute(t, name, n)
        return t

    return PaDerivation(
        p.rule,
        frozenset(sub_f(f) for f in p.conclusion),
        premises=tuple(_subst_tree(q, numerals) for q in p.premises),
        principal=sub_f(p.principal) if p.principal is not None else None,
        witness=sub_t(p.witness) if p.witness is not None else None,
        eigen=p.eigen,
        pick=p.pick,
        cut_formula=sub_f(p.cut_formula) if p.cut_formula is not None else None,
        axiom_id=p.axiom_id,
        axiom_terms=tuple(sub_t(t) for t in p.axiom_terms),
        leaf_formula=sub_f(p.leaf_formula) if p.leaf_formula is not None else None,
        ind_var=p.ind_var,
        ind_formula=sub_f(p.ind_formula) if p.ind_formula is not None else None,
        ind_term=sub_t(p.ind_term) if p.ind_term is not None else None,
    )


# ---------------------------------------------------------------------------
# statistics

@dataclass(frozen=True)
class ProofStats:
    q: int
    m: int
    d: int
    c: int
    fml: frozenset
    tm: frozenset
    free_vars: tuple
    c_certified: bool


def _term_size(t: Term) -> int:
    return 1 + sum(_term_size(a) for a in t.args)


def _q_of(f: Formula) -> int:
    try:
        return prenex_class(f)[0]
    except NotPrenexError:
        return degree(f)


def _e_level(c: int, base: int, cap_bits: int):
    """e_c(base) or None when it overflows the cap."""
    try:
        return e_tower(c, base, cap_bits=cap_bits)
    except MagnitudeCapError:
        return None


def _sample_ok(value_fn, names, c, sample_bound, cap_bits, rng):
    """Check value <= e_c(max(2, assignment)) over sampled assignments."""
    arity = len(names)
    if arity == 0:
        tuples = [()]
    elif (sample_bound + 1) ** arity <= 5000:
        tuples = itertools.product(range(sample_bound + 1), repeat=arity)
    else:
        tuples = [
            tuple(rng.randint(0, sample_bound) for _ in range(arity)) for _ in range(2000)
        ]
    for values in tuples:
        env = dict(zip(names, values))
        base = max((2,) + values)
        bound = _e_level(c, base, cap_bits)
        try:
            value = value_fn(env)
        except MagnitudeCapError:
            if bound is not None:
                return False
            continue
        if bound is not None and value > bound:
            return False
    return True


def proof_stats(
    p: PaDerivation,
    axiom_terms_cap=None,
    sample_bound: int = 16,
    cap_bits: int = DEFAULT_CAP_BITS,
) -> ProofStats:
    """Size and growth statistics of a derivation.

    c is the least level >= 2 at which every collected term, and the
    sequence code of the end-sequent variables, stays below the base-max
    exponential tower on all sampled assignments; c_certified reports
    whether the growth-certificate algebra proves that level for all
    assignments, not only the sampled ones.
    """
    fml = frozenset(
        f for node in all_nodes(p) for f in node.conclusion if not is_delta0(f)
    )
    tm = set()
    for node in all_nodes(p):
        if node.rule == "exists":
            tm.add(node.witness)
        elif node.rule == "induction":
            tm.add(node.ind_term)
        elif node.rule == "axiom_pi1" and axiom_terms_cap is not None:
            tm.update(t for t in node.axiom_terms if _term_size(t) <= axiom_terms_cap)
    tm = frozenset(tm)
    names = tuple(sorted(sequent_free_vars(p.conclusion)))

    checks = []
    for t in tm:
        t_vars = tuple(sorted(term_free_vars(t)))
        checks.append(
            (
                tuple(t_vars),
                (lambda t: lambda env: eval_term(t, env, cap_bits))(t),
                least_dominating_level(term_certificate(t)),
            )
        )
    if len(names) >= 1:
        code_fn = lambda env: encode_seq([env[n] for n in names])
        if len(names) <= 1:
            code_level = 2
        else:
            # code < (B+1)^(len+1) <= B^(2 len + 2) for B >= 2
            from .growth import GrowthCert, cert_dominated_by

            code_level = 2
            while not cert_dominated_by(GrowthCert(0, 2 * len(names) + 2), code_level):
                code_level += 1
        checks.append((names, code_fn, code_level))

    cert_level = max((lvl for _, _, lvl in checks), default=2)
    cert_level = max(cert_level, 2)
    rng = random.Random(998877)
    c = 2
    while c < cert_level and not all(
        _sample_ok(fn, vs, c, sample_bound, cap_bits, rng) for vs, fn, _ in checks
    ):
        c += 1

    q = max((_q_of(f) for f in fml), default=0)
    m = sum(1 for f in fml if _q_of(f) > 0)
    return ProofStats(
        q=q,
        m=m,
        d=depth(p),
        c=c,
        fml=fml,
        tm=tm,
        free_vars=names,
        c_certified=c >= cert_level,
    )


# ---------------------------------------------------------------------------
# proof files: one node per line, two-space indent per nesting level,
# "rule key=value ... :: sequent"; values with spaces are brace-wrapped

def save_proof(p: PaDerivation) -> str:
    lines = []
    _emit(p, 0, lines)
    return "\n".join(lines) + "\n"


def _emit(p, level, lines):
    parts = [p.rule]
    if p.rule == "axiom_pi1":
        parts.append(f"axiom={p.axiom_id}")
        inner = ", ".join("{" + print_term(t) + "}" for t in p.axiom_terms)
        parts.append(f"terms=({inner})")
    elif p.rule == "true_delta0":
        parts.append("formula={" + print_formula(p.leaf_formula) + "}")
    elif p.rule in ("and", "or", "exists", "forall"):
        parts.append("formula={" + print_formula(p.principal) + "}")
        if p.rule == "or":
            parts.append(f"pick={p.pick}")
        elif p.rule == "exists":
            parts.append("witness={" + print_term(p.witness) + "}")
        elif p.rule == "forall":
            parts.append(f"eigen={p.eigen}")
    elif p.rule == "cut":
        parts.append("formula={" + print_formula(p.cut_formula) + "}")
    elif p.rule == "induction":
        parts.append(f"var={p.ind_var}")
        parts.append("formula={" + print_formula(p.ind_formula) + "}")
        parts.append("term={" + print_term(p.ind_term) + "}")
    lines.append("  " * level + " ".join(parts) + " :: " + print_sequent(p.conclusion))
    for q in p.premises:
        _emit(q, level + 1, lines)


def load_proof(text: str) -> PaDerivation:
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        indent = len(raw) - len(raw.lstrip(" "))
        if indent % 2:
            raise ProofFileError("odd indentation", lineno)
        rows.append((lineno, indent // 2, stripped))
    if not rows:
        raise ProofFileError("empty proof file", 0)
    node, rest = _build(rows, 0)
    if rest:
        raise ProofFileError("unexpected extra root node", rest[0][0])
    return node


def _build(rows, level):
    lineno, lvl, content = rows[0]
    if lvl != level:
        raise ProofFileError(f"expected indent {level}, found {lvl}", lineno)
    rule, payload, sequent_text = _parse_line(content, lineno)
    rest = rows[1:]
    premises = []
    while rest and rest[0][1] > level:
        if rest[0][1] != level + 1:
            raise ProofFileError("indentation jumps a level", rest[0][0])
        child, rest = _build(rest, level + 1)
        premises.append(child)
    try:
        conclusion = parse_sequent(sequent_text)
    except ProofbenchError as ex:
        raise ProofFileError(f"bad sequent: {ex}", lineno)
    node = _assemble(rule, payload, conclusion, tuple(premises), lineno)
    return node, rest


def _parse_line(content, lineno):
    if "::" not in content:
        raise ProofFileError("missing '::' separator", lineno)
    head, sequent_text = content.split("::", 1)
    head = head.strip()
    fields = _split_payload(head, lineno)
    if not fields:
        raise ProofFileError("missing rule tag", lineno)
    rule = fields[0]
    if rule not in RULES:
        raise ProofFileError(f"unknown rule {rule}", lineno)
    payload = {}
    for field_text in fields[1:]:
        if "=" not in field_text:
            raise ProofFileError(f"malformed payload {field_text!r}", lineno)
        key, value = field_text.split("=", 1)
        payload[key] = value
    return rule, payload, sequent_text.strip()


def _split_payload(head, lineno):
    out, cur, depth_braces, depth_parens = [], [], 0, 0
    for ch in head:
        if ch == "{":
            depth_braces += 1
        elif ch == "}":
            depth_braces -= 1
            if depth_braces < 0:
                raise ProofFileError("unbalanced braces", lineno)
        elif ch == "(":
            depth_parens += 1
        elif ch == ")":
            depth_parens -= 1
        if ch == " " and depth_braces == 0 and depth_parens == 0:
            if cur:
                out.append("".join(cur))
                cur = []
        else:
            cur.append(ch)
    if depth_braces or depth_parens:
        raise ProofFileError("unbalanced braces", lineno)
    if cur:
        out.append("".join(cur))
    return out


def _unbrace(value, lineno, what):
    value = value.strip()
    if not (value.startswith("{") and value.endswith("}")):
        raise ProofFileError(f"{what} must be brace-wrapped", lineno)
    return value[1:-1]


def _payload_formula(payload, key, lineno):
    if key not in payload:
        raise ProofFileError(f"missing {key}=", lineno)
    try:
        return parse_formula(_unbrace(payload[key], lineno, key))
    except ProofbenchError as ex:
        raise ProofFileError(f"bad {key}: {ex}", lineno)


def _payload_term(payload, key, lineno):
    if key not in payload:
        raise ProofFileError(f"missing {key}=", lineno)
    try:
        return parse_term(_unbrace(payload[key], lineno, key))
    except ProofbenchError as ex:
        raise ProofFileError(f"bad {key}: {ex}", lineno)


def _assemble(rule, payload, conclusion, premises, lineno):
    if rule == "axiom_logical":
        return PaDerivation(rule, conclusion, premises=premises)
    if rule == "axiom_pi1":
        if "axiom" not in payload or "terms" not in payload:
            raise ProofFileError("axiom_pi1 needs axiom= and terms=", lineno)
        raw = payload["terms"].strip()
        if not (raw.startswith("(") and raw.endswith(")")):
            raise ProofFileError("terms must be parenthesized", lineno)
        terms = []
        for piece in _split_top_braced(raw[1:-1]):
            piece = piece.strip()
            if piece:
                try:
                    terms.append(parse_term(_unbrace(piece, lineno, "terms entry")))
                except ProofbenchError as ex:
                    raise ProofFileError(f"bad term: {ex}", lineno)
        return PaDerivation(
            rule, conclusion, premises=premises, axiom_id=payload["axiom"], axiom_terms=tuple(terms)
        )
    if rule == "true_delta0":
        return PaDerivation(
            rule, conclusion, premises=premises, leaf_formula=_payload_formula(payload, "formula", lineno)
        )
    if rule == "and":
        return PaDerivation(
            rule, conclusion, premises=premises, principal=_payload_formula(payload, "formula", lineno)
        )
    if rule == "or":
        if "pick" not in payload:
            raise ProofFileError("or needs pick=", lineno)
        try:
            pick = int(payload["pick"])
        except ValueError:
            raise ProofFileError("pick must be an integer", lineno)
        return PaDerivation(
            rule,
            conclusion,
            premises=premises,
            principal=_payload_formula(payload, "formula", lineno),
            pick=pick,
        )
    if rule == "exists":
        return PaDerivation(
            rule,
            conclusion,
            premises=premises,
            principal=_payload_formula(payload, "formula", lineno),
            witness=_payload_term(payload, "witness", lineno),
        )
    if rule == "forall":
        if "eigen" not in payload:
            raise ProofFileError("forall needs eigen=", lineno)
        return PaDerivation(
            rule,
            conclusion,
            premises=premises,
            principal=_payload_formula(payload, "formula", lineno),
            eigen=payload["eigen"],
        )
    if rule == "cut":
        return PaDerivation(
            rule, conclusion, premises=premises, cut_formula=_payload_formula(payload, "formula", lineno)
        )
    if "var" not in payload:
        raise ProofFileError("induction needs var=", lineno)
    return PaDerivation(
        rule,
        conclusion,
        premises=premises,
        ind_var=payload["var"],
        ind_formula=_payload_formula(payload, "formula", lineno),
        ind_term=_payload_term(payload, "term", lineno),
    )


def _split_top_braced(text):
    out, cur, depth_braces = [], [], 0
    for ch in text:
        if ch == "{":
            depth_braces += 1
        elif ch == "}":
            depth_braces -= 1
        if ch == "," and depth_braces == 0:
            out.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    out.append("".join(cur))
    return out
