"""Exact and numeric verification of quantum principal bundles over quantum real projective spaces.

Subpackages/modules: ``ncalg`` (presentations, normal forms, exact linear
algebra), ``hopf``, ``comod``, ``principal``, ``repr`` (truncated
representations), ``fredholm`` and ``cli``.
"""

__version__ = "0.1.0"
