"""Isomonodromy toolkit for the degenerate fifth Painleve equation."""
