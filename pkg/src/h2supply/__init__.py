"""Multi-objective design of an inter-seasonal hydrogen supply chain."""

__version__ = "0.1.0"
