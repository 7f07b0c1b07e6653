"""Exception hierarchy.

Algebra code raises these; boundary APIs (parsers, harness, plan interpreter)
wrap them in `option.Err`.
"""


class ThreePointError(Exception):
    """Base class of every error raised by the package."""


class ParseError(ThreePointError, ValueError):
    """Malformed ring element, rational, basis label or plan."""


class UnknownFieldError(ThreePointError, KeyError):
    """A field or generator name missing from the weight registry."""


class ConstraintError(ThreePointError, ValueError):
    """Realization parameters violate a suite precondition."""


class StepBudgetExceeded(ThreePointError, RuntimeError):
    """A rewriting or mode-splitting loop ran past its budget.

    Both loops terminate on valid input, so this always signals a bug.
    """


class UnboundedModeSum(StepBudgetExceeded):
    """Support analysis found infinitely many contributing mode splittings."""
