"""Unit tests of the chemostokes package; run with python -m unittest discover test."""
