"""Simultaneous diagonal flips in plane triangulations."""

from .core import *  # noqa: F401,F403
