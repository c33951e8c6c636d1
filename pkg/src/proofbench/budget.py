"""Step budgets and magnitude caps.

Every potentially long-running loop in the package spends from an explicit
StepBudget; natural-number arithmetic that can explode goes through
checked_pow / check_magnitude. Exhaustion raises rather than returning a
wrong answer, and callers that treat exhaustion as "undecided" catch
BudgetExceededError at their boundary.
"""

from dataclasses import dataclass, field

from .errors import BudgetExceededError, MagnitudeCapError

DEFAULT_STEP_BUDGET = 10_000_000
DEFAULT_CAP_BITS = 65536


@dataclass
class StepBudget:
    limit: int = DEFAULT_STEP_BUDGET
    spent: int = field(default=0)

    def spend(self, n: int = 1) -> None:
        self.spent += n
        if self.spent > self.limit:
            raise BudgetExceededError(f"step budget of {self.limit} exhausted")

    @property
    def remaining(self) -> int:
        return max(0, self.limit - self.spent)

    def sub_budget(self, limit: int) -> "StepBudget":
        """A child budget that can spend at most min(limit, remaining) steps.

        The child is independent; the parent is charged by the caller if it
        wants the child's spending to count (probe loops usually do not).
        """
        return StepBudget(min(limit, self.remaining))


def as_budget(budget) -> StepBudget:
    if budget is None:
        return StepBudget()
    if isinstance(budget, StepBudget):
        return budget
    return StepBudget(int(budget))


def check_magnitude(value: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    if value.bit_length() > cap_bits:
        raise MagnitudeCapError(f"value has {value.bit_length()} bits, cap is {cap_bits}")
    return value


def checked_pow(base: int, exp: int, cap_bits: int = DEFAULT_CAP_BITS) -> int:
    """base**exp with a pre-check so we never materialize a doomed bigint."""
    if exp < 0:
        raise ValueError("negative exponent")
    if base <= 1 or exp <= 1:
        return check_magnitude(base**exp, cap_bits)
    # base^exp needs at least (bit_length(base)-1)*exp bits
    if (base.bit_length() - 1) * exp > cap_bits:
        raise MagnitudeCapError(f"{base}^{exp} exceeds 2^{cap_bits}")
    return check_magnitude(base**exp, cap_bits)
