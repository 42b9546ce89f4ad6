__version__ = "0.1.0"

from .errors import LexGraphError  # noqa: E402

__all__ = ["LexGraphError", "__version__"]
