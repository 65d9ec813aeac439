"""Bundled scenario files (*.scn)."""
