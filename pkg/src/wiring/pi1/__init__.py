"""Fundamental groups of arrangement complements, from diagrams."""
