"""Verification engine for finite non-solvable minimal non-CA groups."""

__version__ = "0.1.0"
ENGINE_VERSION = __version__
