"""Heegaard Floer homology of graph manifolds from plumbing descriptions.

The package computes the rank of the hat-flavor Heegaard Floer homology of
a graph manifold by assembling type-D multimodules over the torus algebra:
one building block per plumbing vertex feature (Seifert pieces, Euler-number
twists, genus handles, connecting edges), glued pairwise and reduced after
every step.
"""

__version__ = "0.1.0"
