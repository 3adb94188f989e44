"""Enumeration of commutation classes and their classification under moves."""
