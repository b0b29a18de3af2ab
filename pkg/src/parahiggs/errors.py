"""Exception hierarchy.

Every domain error carries a machine-readable ``kind`` so the command line
front end can report it without string matching.
"""


class ParaHiggsError(Exception):
    kind = "error"


class InvalidInputError(ParaHiggsError, ValueError):
    kind = "invalid"


class UnsupportedError(ParaHiggsError):
    kind = "unsupported"


class NonSplitError(UnsupportedError):
    """A characteristic polynomial does not split over Q."""

    kind = "nonsplit"


class AmbiguityError(ParaHiggsError):
    """The residue is not regular, so compatible flags are not unique."""

    kind = "ambiguous"


class StabilizationError(ParaHiggsError):
    kind = "stabilization"


class UnstableError(ParaHiggsError):
    kind = "unstable"
