from dataclasses import dataclass

from core.exceptions import InvalidOverlay

from .constants import MAX_OVERLAYS, RENDER_FORMAT, TEXT

RENDER_FORMATS = frozenset(value for value, _ in RENDER_FORMAT)


@dataclass(frozen=True)
class RenderSpec:
    """A taxonomy plus up to two classifications to highlight on it.

    Overlay 1 is marked ``[1]`` (first fill), overlay 2 ``[2]`` (second
    fill); cells selected by both are marked ``[12]`` (striped fill).
    """

    taxonomy: object
    overlays: tuple = ()
    format: str = TEXT

    def __post_init__(self):
        object.__setattr__(self, "overlays", tuple(self.overlays))
        if len(self.overlays) > MAX_OVERLAYS:
            raise InvalidOverlay(f"at most {MAX_OVERLAYS} overlays can be rendered")
        if self.format not in RENDER_FORMATS:
            raise ValueError(f"unknown render format {self.format!r}")
