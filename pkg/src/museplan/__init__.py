"""Personalized museum tour planning.

Ranks artworks by textual energy over catalog descriptions, models visitor
preferences as characteristic vectors, and computes optimal time-budgeted
tours over the museum's room graph with an exact integer solver.
"""

from museplan.corpus import (
    Artwork,
    Museum,
    MuseumFormatError,
    TimingModel,
    load_bundled,
    load_museum,
    resolve_dataset,
    validate_museum,
)

__version__ = "0.1.0"

__all__ = [
    "Artwork",
    "Museum",
    "MuseumFormatError",
    "TimingModel",
    "load_bundled",
    "load_museum",
    "resolve_dataset",
    "validate_museum",
    "__version__",
]
