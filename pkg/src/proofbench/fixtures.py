"""Bundled example derivations used by tests, docs, and the CLI demo mode.

Each builder returns a checked derivation of a simple Sigma1 sequent with
one free variable x. The induction example proves the same unboundedness
statement as toy_exists_above but routes it through the complete-induction
rule, which is what the embedding and elimination demos need.
"""

from .formulas import exists, lt, eq, negate, num, plus, substitute, times, var
from .pa_proofs import (
    PaDerivation,
    axiom_logical,
    axiom_pi1,
    exists_rule,
    induction_rule,
    true_delta0,
)

X = var("x")


def toy_exists_succ() -> PaDerivation:
    """|- E y. y = x+1, witnessed by x+1 and closed by reflexivity."""
    goal = exists("y", eq(var("y"), plus(X, num(1))))
    inst = eq(plus(X, num(1)), plus(X, num(1)))
    leaf = axiom_pi1({goal, inst}, "eq_refl", (plus(X, num(1)),))
    return exists_rule({goal}, goal, plus(X, num(1)), leaf)


def toy_exists_double() -> PaDerivation:
    """|- E y. y = x*2, witnessed by x*2."""
    goal = exists("y", eq(var("y"), times(X, num(2))))
    inst = eq(times(X, num(2)), times(X, num(2)))
    leaf = axiom_pi1({goal, inst}, "eq_refl", (times(X, num(2)),))
    return exists_rule({goal}, goal, times(X, num(2)), leaf)


def toy_exists_above() -> PaDerivation:
    """|- E y. x < y, witnessed by the successor."""
    goal = exists("y", lt(X, var("y")))
    inst = lt(X, plus(X, num(1)))
    leaf = axiom_pi1({goal, inst}, "lt_succ", (X,))
    return exists_rule({goal}, goal, plus(X, num(1)), leaf)


def toy_induction_above() -> PaDerivation:
    """|- E y. x < y via complete induction on A(a) = E y. a < y at term x.

    Base: witness 1 over the true sentence 0 < 1. Step: from A(a) denied,
    witness (a+1)+1 for A(a+1), closed by the successor axiom. Side: the
    denied instance at x pairs with the goal for a logical axiom.
    """
    goal = exists("y", lt(X, var("y")))
    a = var("a")
    ind_formula = exists("y", lt(a, var("y")))

    base_goal = substitute(ind_formula, "a", num(0))
    base_inst = lt(num(0), num(1))
    base = exists_rule(
        {goal, base_goal},
        base_goal,
        num(1),
        true_delta0({goal, base_goal, base_inst}, base_inst),
    )

    step_hyp = negate(ind_formula)
    step_goal = substitute(ind_formula, "a", plus(a, num(1)))
    step_witness = plus(plus(a, num(1)), num(1))
    step_inst = lt(plus(a, num(1)), step_witness)
    step = exists_rule(
        {goal, step_hyp, step_goal},
        step_goal,
        step_witness,
        axiom_pi1({goal, step_hyp, step_goal, step_inst}, "lt_succ", (plus(a, num(1)),)),
    )

    side = axiom_logical({goal, negate(goal)})
    return induction_rule({goal}, "a", ind_formula, X, base, step, side)


def all_toy_proofs():
    return {
        "proof-ex1": toy_exists_succ(),
        "proof-ex2": toy_exists_double(),
        "proof-ex3": toy_exists_above(),
        "proof-ind": toy_induction_above(),
    }
