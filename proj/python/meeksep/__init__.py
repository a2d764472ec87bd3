"""Meek separators, adaptive subset search and causal mean matching."""

try:
    from ._meeksep import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _meeksep import *  # noqa: F401,F403  (flat build-tree layout)
