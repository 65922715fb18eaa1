"""Gauss HUP Verifier

A numerical library and command-line tool for Gauss-type interval maps, their
transfer and Koopman operators, the Hilbert-transform family, and the
hyperbola Fourier checks built on top of them.
"""

__version__ = "0.1.0"
__author__ = "Gauss HUP Verifier"
__description__ = "Verify transfer-operator and Hilbert-transform identities numerically"
