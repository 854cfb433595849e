"""Semi-Lagrangian IMEX Runge-Kutta solvers in one space dimension."""
__version__ = "0.1.0"
