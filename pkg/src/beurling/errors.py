"""Exception taxonomy shared by every module.

Three failure classes, mirrored by the CLI exit codes:

* ``RejectedInputError`` -- the caller handed us something invalid
  (out-of-range argument, table too small, malformed grid).  Exit code 2.
* ``DomainError`` -- the input is syntactically fine but sits on a
  mathematical singularity (pole of Gamma, pole of zeta).  Exit code 2.
* ``CapabilityError`` -- the request is valid but exceeds what the
  implementation can deliver (panel cap, unreachable error target).
  The message always reports the achievable alternative.  Exit code 3.
"""


class RejectedInputError(ValueError):
    """Input rejected before any computation started."""


class DomainError(ValueError):
    """Evaluation requested at a mathematical singularity."""


class CapabilityError(RuntimeError):
    """Valid request beyond configured or numerical capability."""
