"""Margin-based Pareto ensemble pruning for neural prediction intervals.

The package trains a pool of two-headed MLP interval predictors with a
differentiable coverage/width loss, prunes the pool with a bi-objective
Pareto subset search, and fuses the survivors by median voting.
"""

__version__ = "0.1.0"
