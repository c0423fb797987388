"""Finite-trace LTL checking for small concurrent programs.

Properties are parsed and classified into the temporal hierarchy, rewritten
into a small operator basis and evaluated by a network of operator actors
fed with one atomic-proposition snapshot per program state.  A stateless
explorer enumerates thread interleavings and runs one monitored iteration
per schedule.
"""

from ltlsmc.errors import LtlsmcError

__version__ = "0.1.0"

__all__ = ["LtlsmcError", "__version__"]
