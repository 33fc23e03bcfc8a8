"""Exception types shared across the package."""


class MalformedStreamError(ValueError):
    """A compressed stream is truncated or corrupted."""


class ExternalCompressorError(RuntimeError):
    """An external compression program failed or is missing.

    Carries the id of the compressor spec that failed.
    """

    def __init__(self, compressor_id: str, message: str):
        super().__init__(f"[{compressor_id}] {message}")
        self.compressor_id = compressor_id


class OffsetTooLargeError(ValueError):
    """A compressed size is <= the offset being subtracted.

    ``items`` names the offending inputs (argument names or corpus item ids).
    """

    def __init__(self, message: str, items: list[str] | None = None):
        super().__init__(message)
        self.items = items or []


class CalibrationError(ValueError):
    """Offset calibration cannot proceed (e.g. degenerate regression input)."""


class MidiFormatError(ValueError):
    """Input is not a parseable metrical Standard MIDI File."""


class EventSchemaError(ValueError):
    """A JSON note-event record violates the schema.

    ``index`` is the position of the offending record in the input array,
    or None when the document as a whole is malformed.
    """

    def __init__(self, index: int | None, message: str):
        if index is None:
            super().__init__(message)
        else:
            super().__init__(f"record {index}: {message}")
        self.index = index


class TranspositionRangeError(ValueError):
    """Transposing would push pitches off the 88-key range.

    ``events`` holds the offending (pitch, onset, duration) events.
    """

    def __init__(self, message: str, events: list | None = None):
        super().__init__(message)
        self.events = events or []


class CorpusError(ValueError):
    """A corpus directory or manifest is unusable."""
