"""
scox: the singular Coxeter monoid for finite Coxeter systems.

Parabolic double cosets, singular expressions, the braid and switchback
relation calculus with a rewriting normalizer, singular Coxeter complexes
and the type-A web calculus.
"""

__version__ = "0.1.0"
