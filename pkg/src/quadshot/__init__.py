"""Quadruped soccer-shooting stack: motion control, shot planning, simulation, training."""

__version__ = "0.1.0"
