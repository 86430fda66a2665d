"""
Tests for the rational recurrence toolkit.
"""
