"""Interval sizes of feasible partial orders, with brute-force oracles."""
