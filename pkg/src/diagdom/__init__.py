"""diagdom: exact verification of diagonal-dominance positivity.

Subsystems: labeled graphs with boundary and gluing, exact tensor-network
contraction, universal pairings with certified dominance verdicts,
finite-group TQFT partition functions, and the combinatorial complexity
calculus for decomposed 3-manifold data.
"""

__version__ = "0.1.0"
