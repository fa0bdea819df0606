"""Exception hierarchy shared across the package.

Everything raised on purpose derives from :class:`GanencError`, so callers
(and the CLI) can distinguish expected failures from bugs.
"""


class GanencError(Exception):
    """Base class for all errors raised by this package."""


class WidthMismatchError(GanencError, ValueError):
    """Two bit vectors (or a vector and a circuit) have different widths."""


class IrreversibleCircuitError(GanencError, ValueError):
    """An operation that needs a NOT-only circuit was given one with binary gates."""


class ReversibleCircuitError(GanencError, ValueError):
    """Shredding was attempted with a circuit that is secretly recoverable."""


class CircuitFormatError(GanencError, ValueError):
    """A circuit (or locked-circuit) file does not follow the text format."""


class TagMismatchError(GanencError):
    """Unlocking failed: wrong passphrase or corrupted payload."""


class ConvergenceError(GanencError):
    """Key search stopped without reaching zero deviation.

    Carries the :class:`~ganenc.gan.ConvergenceReport` describing how far the
    search got before it gave up.
    """

    def __init__(self, message, report):
        super().__init__(message)
        self.report = report


class OutOfAlphabetError(GanencError, ValueError):
    """A character of the input text is not part of the chosen alphabet."""

    def __init__(self, character, position=None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"character {character!r}{where} is not in the alphabet")
        self.character = character
        self.position = position


class AlphabetMismatchError(GanencError, ValueError):
    """The alphabet offered for decryption does not match the message's digest."""


class AlphabetFormatError(GanencError, ValueError):
    """An alphabet file does not follow the text format."""


class EnvelopeFormatError(GanencError, ValueError):
    """A serialized message envelope is malformed."""


class BadMagicError(EnvelopeFormatError):
    """The buffer/stream does not start with the expected magic bytes."""


class UnsupportedVersionError(EnvelopeFormatError):
    """The envelope declares a format version this code does not understand."""


class TruncatedEnvelopeError(EnvelopeFormatError):
    """The buffer ended before all declared fields could be read."""


class CountMismatchError(EnvelopeFormatError):
    """Declared element counts do not match the actual payload size."""


class ProtocolError(GanencError):
    """Transport-level failure while framing envelopes over a byte stream."""


class FrameOversizeError(ProtocolError):
    """A frame declares a payload larger than the permitted maximum."""
