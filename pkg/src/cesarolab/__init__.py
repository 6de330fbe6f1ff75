"""cesarolab: a verification laboratory for generalized Cesaro summation,
special-function identities and the root-identity ledgers of the Riemann
zeta function."""

__version__ = "0.1.0"
