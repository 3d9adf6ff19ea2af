"""
Exact computations on cubic threefolds over finite fields.
"""
__version__ = "1.0.0"
