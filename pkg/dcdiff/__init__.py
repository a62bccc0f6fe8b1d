"""dcdiff - Exact sumset bounds for sets with distinct consecutive differences."""

__version__ = "0.1.0"
