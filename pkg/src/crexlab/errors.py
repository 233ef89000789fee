"""Exception types shared across the package."""


class CrexlabError(Exception):
    """Base class for all crexlab errors."""


class DivergenceError(CrexlabError):
    """An integral or moment fails to converge at the requested tolerance."""


class DomainError(CrexlabError, ValueError):
    """An argument lies outside the mathematical domain of an operation."""


class ParameterError(CrexlabError, ValueError):
    """An estimator tuning value produces invalid weights."""


class SizeError(CrexlabError, ValueError):
    """A sample is too small for the requested estimator."""


class SpecParseError(CrexlabError, ValueError):
    """A textual spec (distribution, estimator, or config) cannot be parsed."""


class CellError(CrexlabError):
    """A simulation cell failed; carries the cell coordinates for context."""

    def __init__(self, coordinates, cause):
        self.coordinates = dict(coordinates)
        self.cause = cause
        coord_text = ", ".join(f"{k}={v}" for k, v in self.coordinates.items())
        super().__init__(f"cell ({coord_text}) failed: {cause}")
