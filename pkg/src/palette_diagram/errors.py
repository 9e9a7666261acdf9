"""Exception types raised by the palette_diagram modules."""


class PaletteError(ValueError):
    """Base class for every error raised by this package."""


class EmptyInputError(PaletteError):
    pass


class NegativeValueError(PaletteError):
    pass


class RaggedRowsError(PaletteError):
    pass


class NotNumericError(PaletteError):
    pass


class MalformedDocumentError(PaletteError):
    pass


class ZeroRowError(PaletteError):
    pass


class BadKError(PaletteError):
    pass


class DisconnectedError(PaletteError):
    pass


class DegenerateDistancesError(PaletteError):
    pass


class DimensionMismatchError(PaletteError):
    pass


class DegenerateSpectrumError(PaletteError):
    pass


class TooFewPointsError(PaletteError):
    pass


class GraphRepairWarning(UserWarning):
    """Emitted when a disconnected k-NN graph had to be bridged."""
