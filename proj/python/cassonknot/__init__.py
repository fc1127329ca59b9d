"""Casson knot invariant toolkit.

Thin re-export of the compiled _casson module: Gauss diagram parsing, the
arrow-diagram pairings behind c2, pedal permutation counts, combinatorial
perturbation of multicrossings, and Monte Carlo evaluation of the localized
configuration space integrals.
"""

try:
    from ._casson import *  # noqa: F401,F403  (installed wheel layout)
except ImportError:
    from _casson import *  # noqa: F401,F403  (in-tree build)
