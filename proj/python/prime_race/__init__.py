"""Prime number races: counts in progressions, lead changes, L-function zeros,
explicit-formula wave sums and prime pairs."""

from ._core import *  # noqa: F401,F403
from ._core import (
    CapacityError,
    DomainError,
    IoError,
    NonConvergenceError,
    ParseError,
    PreconditionError,
    UnsupportedError,
    cli_run,
)

__version__ = "0.1.0"


def main(argv=None):
    import sys

    code, out, err = cli_run(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
