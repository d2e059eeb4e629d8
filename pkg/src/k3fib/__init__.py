"""Exact verification of the Jacobian elliptic fibrations on the singular K3
surface of discriminant 3."""

__version__ = "0.1.0"
