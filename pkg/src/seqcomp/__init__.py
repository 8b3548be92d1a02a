"""Homological algebra over finite-dimensional algebras over prime fields.

Submodules, bottom-up: ``exactla`` (exact linear algebra mod p), ``algebra``
(algebras, modules, homs), ``complexes``, ``derived`` (resolutions and derived
homs), ``completion`` (sequential completions), ``pgroup`` (finite p-groups and
their colimits), ``singularity`` (stable and singularity-category homs),
``morphic`` (the category of morphisms) and ``cli``.
"""

__version__ = "0.1.0"
