"""Counting prime alternating tangles with the O(n) quartic matrix model."""
