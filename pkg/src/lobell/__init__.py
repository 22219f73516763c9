"""Classification of hyperbolic reflection groups and the Lobell family."""

__version__ = "0.1.0"
