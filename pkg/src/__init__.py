"""
Rational recurrence toolkit

Orbits, admissibility, asymptotic classification, stability and bifurcation sweeps
for x_{n+1} = x_{n-1} / (a + b*x_n*x_{n-1}).
"""

__version__ = "0.1.0"
