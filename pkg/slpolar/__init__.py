"""Exact checks of polarization and parabolic statements for sl(n)."""

from .const import VERSION

__version__ = VERSION
