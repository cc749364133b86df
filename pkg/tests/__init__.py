"""Tests for gtl-cli."""
