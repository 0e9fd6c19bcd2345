"""Bound states of the effective-mass Klein-Gordon equation with a generalized Morse potential."""

__version__ = "0.1.0"
