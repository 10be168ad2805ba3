"""scriptgrader: automated grading of descriptive exam answers."""

__version__ = "0.1.0"
