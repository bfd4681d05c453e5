"""Shared builders for the test modules (cached, since spaces are reused)."""

from functools import lru_cache

from burau_orbits.edge_spaces import build_C, build_P
from burau_orbits.finite_ring import Ring
from burau_orbits.spec_text import parse_ring_spec, parse_wheel
from burau_orbits.tables import expand_param, read_tsv, substitute


@lru_cache(maxsize=None)
def ring(text):
    return Ring(parse_ring_spec(text))


@lru_cache(maxsize=None)
def pspace(text):
    return build_P(ring(text))


@lru_cache(maxsize=None)
def suite_texts():
    """Every input named in the shipped data files, parameters expanded."""
    out = []
    for name in ("table1.tsv", "realizations.tsv", "negatives.tsv"):
        for row in read_tsv(name):
            for sub in expand_param(row["param"]):
                text = substitute(row["input"], sub)
                if text not in out:
                    out.append(text)
    return tuple(out)


@lru_cache(maxsize=None)
def wheel(text):
    return parse_wheel(*text.split())


@lru_cache(maxsize=None)
def cspace(text):
    return build_C(wheel(text))


EXCEPTIONAL = "3 2,1 -1,-3;0,-1"
