"""Clique and chromatic number bounds for inhomogeneous Erdos-Renyi graphs.

Sampling, exact solvers, finite-n bound evaluation and seeded Monte Carlo
checks that empirical clique/chromatic statistics land in the guaranteed
windows.
"""

__version__ = "0.1.0"


class PreconditionError(ValueError):
    """A hypothesis of the bound (or an operation precondition) fails.

    These are scientifically meaningful refusals, mapped to exit code 1
    by the command line.
    """


class ConstraintError(PreconditionError):
    """A parameter inequality of a theorem case is violated."""


class FormatError(ValueError):
    """Malformed input file or invariant violation in loaded data (exit 2)."""
