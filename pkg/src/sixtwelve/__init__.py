"""Integral 6- and 12-coverings of elliptic curves from 2-, 3- and 4-coverings.

Modules:
    exact      rational arithmetic, polynomials, matrices, number fields
    lattice    Hermite normal form, saturation, LLL, short vectors
    quartic    binary quartic invariants and covariants
    cubic      ternary cubic invariants and covariants
    models     genus one models, covering maps, covariant matrices
    flex       flex points and flex matrices
    combine    the 6- and 12-covering construction
    minimise   minimisation at primes and reduction
    search     p-adic lattice point search
    ellcurve   Weierstrass curves, group law, canonical heights
    modelfile  text format for models, matrices and points
    cli        command line entry point
"""

__version__ = "0.1.0"

from .models import GenusOneModel, ModelError  # noqa: E402,F401
