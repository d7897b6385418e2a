"""Hook-shape diagonal harmonics: symmetric functions, Macdonald operators, modules."""
__version__ = "0.1.0"
