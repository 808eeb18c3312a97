"""
dendrokit tests

Unit and property tests for the tree, Omega, dendroidal-set, K0 and Kan engines.
"""
