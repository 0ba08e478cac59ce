"""Segment numbers and line cover numbers of planar graphs."""

from .graph import PlanarGraph
from .drawing import Drawing, Point, chi, pt, segment_count, segments_of, supporting_lines, validate_drawing

__version__ = "0.1.0"

__all__ = [
    "PlanarGraph", "Drawing", "Point", "chi", "pt",
    "segment_count", "segments_of", "supporting_lines", "validate_drawing",
]
