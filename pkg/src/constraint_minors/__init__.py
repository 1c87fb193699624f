"""Excluded constraint minors for graphic constraint matroids."""
