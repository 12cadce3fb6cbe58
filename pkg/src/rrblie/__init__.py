"""Exact-arithmetic toolkit for relative Rota-Baxter Lie algebras.

Submodules:
  linalg            dense exact linear algebra over Q and F_p
  core              structure-constant algebras, validators, semidirect products
  cohomology        cochain complex, coboundary matrices, cohomology dimensions
  extensions        non-abelian 2-cocycles, extensions, equivalence
  auto_inducibility automorphism inducibility and the Wells map
  der_inducibility  derivation inducibility on abelian extensions
  cli               certificate-emitting command line front end
"""

__version__ = "0.1.0"
