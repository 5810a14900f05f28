"""fieldsampler: crowd-sourced field recordings as live sampler material.

The pipeline: recordings arrive over HTTP, get trimmed and segmented,
classified into one of 41 environmental-sound classes, pitch-tagged,
mapped to one of 8 instrument tracks, announced over OSC, and become
the sample that plays when note events hit that track.
"""

__version__ = "0.1.0"
