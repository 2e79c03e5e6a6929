"""Exact computations for categorified quantum sl2.

Modules: qring (Laurent polynomials and q-integers), udot (the idempotented
algebra, canonical basis and semilinear form), nilhecke (divided differences and
Schubert calculus), flag (Grassmannian cohomology and flag bimodules), diagrams
(2-morphisms and their evaluation into bimodules) and cli.
"""
__version__ = "0.1.0"
