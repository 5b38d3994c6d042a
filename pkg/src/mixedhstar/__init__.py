"""Subdivision invariants of Eulerian posets and lattice polytopes."""
