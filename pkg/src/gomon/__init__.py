"""Symbolic computation for monoids attached to graphs of ordered groups."""
