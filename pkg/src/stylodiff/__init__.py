"""stylodiff: stylometric profiling and demographic-group classification
for labeled review corpora."""

__version__ = "0.1.0"

from . import analysis, corpus, features, learn, lexicons, textproc

__all__ = ["analysis", "corpus", "features", "learn", "lexicons", "textproc",
           "__version__"]
