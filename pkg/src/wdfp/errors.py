"""Exception types raised across the package.

Built-in exceptions are used where they fit naturally: a missing input
file raises ``FileNotFoundError`` and write failures surface as ``OSError``.
Everything domain-specific lives here.
"""


class DecodeError(ValueError):
    """The file exists but cannot be decoded as a JPEG or PNG image."""


class CropTooLargeError(ValueError):
    """Requested crop size exceeds at least one image dimension."""


class BadDimensionsError(ValueError):
    """Array dimensions are incompatible with the requested transform."""


class UnknownWaveletError(ValueError):
    """Wavelet identifier does not resolve to a known filter pair."""


class InconsistentPyramidError(ValueError):
    """Subband sizes of a coefficient pyramid do not fit together."""


class WindowTooLargeError(ValueError):
    """A local-variance window does not fit inside the input plane."""


class DimensionMismatchError(ValueError):
    """Two arrays that must share a shape do not."""


class NonSquareInputError(ValueError):
    """Fingerprint extraction requires a square input image."""


class LengthMismatchError(ValueError):
    """Vector lengths disagree (between fingerprints, or file vs. header)."""


class ZeroNormFingerprintError(ValueError):
    """A fingerprint has zero norm; cosine similarity is undefined.

    Signals a degenerate extraction, typically from a constant-color image.
    """


class DegenerateLabelsError(ValueError):
    """ROC construction needs at least one positive and one negative pair."""


class BadMagicError(ValueError):
    """File does not start with the fingerprint-file magic bytes."""


class UnsupportedVersionError(ValueError):
    """Fingerprint file declares a format version this build cannot read."""


class EmptyDatasetError(ValueError):
    """Dataset directory contains no readable images."""


class SingleCameraError(ValueError):
    """All images share one camera label; same/different analysis impossible."""
