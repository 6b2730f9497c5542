"""Mapping classes of closed non-orientable surfaces N_g (2 <= g <= 5) as generator words."""

__version__ = "0.1.0"
