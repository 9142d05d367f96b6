"""Odd unimodal and odd strongly unimodal sequences: generating functions,
exact coefficient tables, congruences and asymptotic checks."""

__version__ = "0.1.0"
