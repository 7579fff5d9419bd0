"""
Search and Enumeration Bounds

Centralized limits for every exhaustive search in the library. Defaults come
from the environment (see scox.config); services take an optional bounds
object so tests can tighten them.
"""

from dataclasses import dataclass
from typing import Optional

from scox.config import Settings, settings as default_settings
from scox.exceptions import ResourceBoundError


@dataclass
class EnumerationBounds:
    """Bounds on group and coset element enumeration"""
    max_elements: int = 1_000_000  # |W_J|, |p| and whole-group listings


@dataclass
class RexSearchBounds:
    """Bounds on reduced-expression search"""
    max_vertices: int = 1_000_000  # rex sets and rex graphs


@dataclass
class RewriteBounds:
    """Bounds used by the normalizer"""
    max_bfs_vertices: int = 1_000_000  # braid search inside one rex graph
    max_rotation_steps: int = 512      # delta search of a rotation sequence


@dataclass
class WebBounds:
    """Bounds on web enumeration"""
    max_webs: int = 1_000_000  # webs kept for relation-class closure
    max_layers: int = 24       # layers per enumerated web


@dataclass
class SearchBounds:
    """Master configuration for every bounded search"""
    enumeration: EnumerationBounds = None
    rex: RexSearchBounds = None
    rewrite: RewriteBounds = None
    webs: WebBounds = None

    def __post_init__(self):
        """Initialize nested dataclasses"""
        if self.enumeration is None:
            self.enumeration = EnumerationBounds()
        if self.rex is None:
            self.rex = RexSearchBounds()
        if self.rewrite is None:
            self.rewrite = RewriteBounds()
        if self.webs is None:
            self.webs = WebBounds()


def bounds_from_settings(config: Optional[Settings] = None) -> SearchBounds:
    """
    Build search bounds from application settings.

    Args:
        config: Optional settings object; the module singleton by default

    Returns:
        SearchBounds: bounds mirroring SCOX_* environment variables
    """
    config = config or default_settings
    return SearchBounds(
        enumeration=EnumerationBounds(max_elements=config.SCOX_ENUMERATION_BOUND),
        rex=RexSearchBounds(max_vertices=config.SCOX_MAX_VERTICES),
        rewrite=RewriteBounds(
            max_bfs_vertices=config.SCOX_MAX_VERTICES,
            max_rotation_steps=config.SCOX_MAX_ROTATION_STEPS,
        ),
        webs=WebBounds(
            max_webs=config.SCOX_MAX_VERTICES,
            max_layers=config.SCOX_MAX_WEB_LAYERS,
        ),
    )


# Default bounds instance
DEFAULT_BOUNDS = bounds_from_settings()


def check_bound(count: int, limit: int, bound_name: str) -> None:
    """Raise ResourceBoundError once `count` exceeds `limit`."""
    if count > limit:
        raise ResourceBoundError(
            f"{bound_name} exceeded ({limit})",
            bound_name=bound_name,
            limit=limit,
        )
