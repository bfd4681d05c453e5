"""Genus-zero Burau subgroups from finite local modules over Z[t, 1/t]."""

__version__ = "0.1.0"
