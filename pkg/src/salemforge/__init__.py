"""Salem polynomial machinery, certified unit-circle eigenvalue data,
multiplicative-independence construction, and Siegel-disk classification
of product automorphisms."""

__version__ = "0.1.0"
