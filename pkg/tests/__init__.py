"""Test package for Gauss HUP Verifier."""
