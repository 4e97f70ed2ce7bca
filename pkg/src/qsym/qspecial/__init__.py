"""Macdonald and Koornwinder polynomials: weight functions, D_sigma, solver, scalar product."""
