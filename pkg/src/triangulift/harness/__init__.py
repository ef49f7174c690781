"""Serialization, CLI plumbing, fixtures, and brute-force oracles."""
