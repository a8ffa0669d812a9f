"""Signal-flow diagrams, linear relations and stateful systems over exact fields."""
__version__ = "0.1.0"
