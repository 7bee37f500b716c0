"""Square complexes for free-by-cyclic groups, GBS classification and HNN certificates."""

from . import complexbuilder, endo, freegroup, gbs, linkcheck, matdecomp

__version__ = "0.1.0"

__all__ = ["complexbuilder", "endo", "freegroup", "gbs", "linkcheck", "matdecomp"]
