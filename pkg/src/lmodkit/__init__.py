"""lmodkit: exact combinatorial sheaf complexes on parabolic posets."""

__version__ = "0.1.0"
