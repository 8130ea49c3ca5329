"""Entropic uncertainty relations and correlation measures with quantum memory."""
from .config import VERSION as __version__

__all__ = ["__version__"]
