"""Exception hierarchy shared by every module.

The command line interface maps these onto process exit codes, so the
split between the classes is part of the public contract:

* ``ParseError``                -> exit 2 (malformed input text)
* ``ValidationError`` family    -> exit 3 (well-formed but illegal values)
* ``CapacityError``             -> exit 4 (request exceeds an enumeration budget)
* ``InternalConsistencyError``  -> exit 5 (an internal cross-check failed;
  never a user error)
"""


class EngineError(Exception):
    """Base class for every error raised by this package."""


class ParseError(EngineError):
    """A text document (game, scenario, instance file) is malformed."""


class ValidationError(EngineError):
    """Structurally valid input carries illegal values."""


class UnknownLabelError(ValidationError):
    """An action or state label is not present in the game."""


class CapacityError(EngineError):
    """The requested computation exceeds a documented enumeration budget."""


class InternalConsistencyError(EngineError):
    """An internal invariant failed; indicates an engine bug, not bad input."""
