from .figures import (KINDS, MissingColumn, PlotSpec, max_segment_mistakes,
                      render, segment_bound)

__version__ = "0.1.0"

__all__ = ["KINDS", "MissingColumn", "PlotSpec", "max_segment_mistakes",
           "render", "segment_bound", "__version__"]
