"""
Test package for lexgraph.
"""
