"""
Search bounds package for scox
"""

from scox.bounds.search_bounds import (
    SearchBounds,
    EnumerationBounds,
    RexSearchBounds,
    RewriteBounds,
    WebBounds,
    DEFAULT_BOUNDS,
    bounds_from_settings,
    check_bound,
)

__all__ = [
    "SearchBounds",
    "EnumerationBounds",
    "RexSearchBounds",
    "RewriteBounds",
    "WebBounds",
    "DEFAULT_BOUNDS",
    "bounds_from_settings",
    "check_bound",
]
