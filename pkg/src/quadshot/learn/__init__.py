"""From-scratch function approximation and the two trainers."""

from .nets import Adam, GaussianPolicy, Mlp, QNet
from .checkpoint import load_checkpoint, save_checkpoint

__all__ = ["Adam", "GaussianPolicy", "Mlp", "QNet", "load_checkpoint", "save_checkpoint"]
