"""Morphological box rendering: one row per attribute, one cell per characteristic.

A cell chosen by both overlays is marked ``[12]`` only when the two
classifications agree on the whole attribute, subtype included. Otherwise
each overlay keeps its own marker, with the subtype code letter when it has
one (``[1T][2R]``).
"""

from django.utils.html import escape

from analysis.diff import diff
from classification.constants import PARTIAL
from classification.validation import validate_classification
from core.exceptions import InvalidOverlay, TaxonomyMismatch

from .constants import (
    APART_FILL,
    BOTH_FILL,
    BOTH_MARKER,
    CELL_PADDING,
    OVERLAY_FILLS,
    STROKE,
    SVG,
    SVG_CELL_HEIGHT,
    SVG_CELL_WIDTH,
    SVG_CHAR_WIDTH,
    SVG_HEADER_HEIGHT,
    SVG_LEGEND_LINE_HEIGHT,
    SVG_MARGIN,
    SVG_ROW_NAME_WIDTH,
    SVG_TEXT_INSET,
    UNMARKED_FILL,
)


def _check_overlays(spec):
    for position, overlay in enumerate(spec.overlays, start=1):
        try:
            report = validate_classification(spec.taxonomy, overlay, PARTIAL)
        except TaxonomyMismatch as exc:
            raise InvalidOverlay(f"overlay {position}: {exc}") from exc
        if not report.is_valid:
            problems = "; ".join(f"{attr}: {message}" for attr, message in report.errors)
            raise InvalidOverlay(f"overlay {position} ({overlay.asset_name}): {problems}")


def _selected_by(overlays, attribute, characteristic):
    """1-based positions of the overlays selecting ``characteristic``."""
    positions = []
    for position, overlay in enumerate(overlays, start=1):
        selection = overlay.selection(attribute.id)
        if selection is not None and characteristic.id in selection:
            positions.append(position)
    return positions


def _shared(taxonomy, overlays):
    if len(overlays) < 2:
        return frozenset()
    return diff(taxonomy, *overlays).shared


def _subtype_letter(overlay, attribute, characteristic):
    subtype = characteristic.subtype(overlay.selection(attribute.id).subtype_id)
    return subtype.code_letter if subtype else ""


def _mark(overlays, shared, attribute, characteristic):
    """``(marker, fill)`` of one cell."""
    positions = _selected_by(overlays, attribute, characteristic)
    if not positions:
        return "", UNMARKED_FILL
    if len(positions) == 1:
        return f"[{positions[0]}]", OVERLAY_FILLS[positions[0] - 1]
    if attribute.id in shared:
        return BOTH_MARKER, BOTH_FILL
    marker = "".join(
        f"[{p}{_subtype_letter(overlays[p - 1], attribute, characteristic)}]" for p in positions
    )
    return marker, APART_FILL


def _legend(overlays):
    entries = [(f"[{p}]", overlay.asset_name) for p, overlay in enumerate(overlays, start=1)]
    if len(overlays) == 2:
        entries.append((BOTH_MARKER, "both"))
    return entries


def render_text(taxonomy, overlays=()):
    shared = _shared(taxonomy, overlays)
    name_width = max(len(a.name) for a in taxonomy.attributes) + CELL_PADDING
    lines = [str(taxonomy), ""]
    for attribute in taxonomy.attributes:
        markers = [_mark(overlays, shared, attribute, c)[0] for c in attribute.characteristics]
        labels = [c.label for c in attribute.characteristics]
        width = max(len(text) for text in (*labels, *markers)) + CELL_PADDING
        label_line = attribute.name.ljust(name_width) + "".join(t.ljust(width) for t in labels)
        marker_line = " " * name_width + "".join(m.ljust(width) for m in markers)
        lines.append(label_line.rstrip())
        lines.append(marker_line.rstrip())
    legend = _legend(overlays)
    if legend:
        lines.append("")
        lines.extend(f"{marker} {name}" for marker, name in legend)
    return "\n".join(lines) + "\n"


def _svg_text(x, y, text, room):
    """A text node squeezed to ``room`` px when it would overflow."""
    fit = ""
    if len(text) * SVG_CHAR_WIDTH > room:
        fit = f' textLength="{room}" lengthAdjust="spacingAndGlyphs"'
    return f'  <text x="{x}" y="{y}"{fit}>{escape(text)}</text>'


def render_svg(taxonomy, overlays=()):
    shared = _shared(taxonomy, overlays)
    columns = max(len(a.characteristics) for a in taxonomy.attributes)
    legend = _legend(overlays)
    legend_top = SVG_HEADER_HEIGHT + len(taxonomy.attributes) * SVG_CELL_HEIGHT
    width = SVG_ROW_NAME_WIDTH + columns * SVG_CELL_WIDTH
    height = legend_top + SVG_MARGIN + len(legend) * SVG_LEGEND_LINE_HEIGHT
    text_dy = SVG_CELL_HEIGHT - 10

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" '
        f'height="{height}" font-family="monospace" font-size="12">',
        "  <defs>",
        '    <pattern id="both" patternUnits="userSpaceOnUse" width="8" height="8">',
        f'      <path d="M0,0 H8 V8 H0 Z" fill="{OVERLAY_FILLS[0]}"/>',
        f'      <path d="M0,8 L8,0" stroke="{OVERLAY_FILLS[1]}" stroke-width="4"/>',
        "    </pattern>",
        '    <pattern id="apart" patternUnits="objectBoundingBox" '
        'patternContentUnits="objectBoundingBox" width="1" height="1">',
        f'      <path d="M0,0 H0.5 V1 H0 Z" fill="{OVERLAY_FILLS[0]}"/>',
        f'      <path d="M0.5,0 H1 V1 H0.5 Z" fill="{OVERLAY_FILLS[1]}"/>',
        "    </pattern>",
        "  </defs>",
        f'  <text x="{SVG_MARGIN}" y="26" font-size="14">{escape(str(taxonomy))}</text>',
    ]
    for row, attribute in enumerate(taxonomy.attributes):
        y = SVG_HEADER_HEIGHT + row * SVG_CELL_HEIGHT
        out.append(_svg_text(SVG_MARGIN, y + text_dy, attribute.name, SVG_ROW_NAME_WIDTH - 2 * SVG_MARGIN))
        for column, characteristic in enumerate(attribute.characteristics):
            x = SVG_ROW_NAME_WIDTH + column * SVG_CELL_WIDTH
            marker, fill = _mark(overlays, shared, attribute, characteristic)
            rect = (
                f'  <rect class="cell" x="{x}" y="{y}" width="{SVG_CELL_WIDTH}" '
                f'height="{SVG_CELL_HEIGHT}" fill="{fill}" stroke="{STROKE}"'
            )
            if fill == APART_FILL:
                out.append(f"{rect}><title>{escape(marker)}</title></rect>")
            else:
                out.append(f"{rect}/>")
            out.append(
                _svg_text(
                    x + SVG_TEXT_INSET,
                    y + text_dy,
                    characteristic.label,
                    SVG_CELL_WIDTH - 2 * SVG_TEXT_INSET,
                )
            )
    for line, (marker, name) in enumerate(legend):
        y = legend_top + SVG_MARGIN + line * SVG_LEGEND_LINE_HEIGHT
        fill = BOTH_FILL if marker == BOTH_MARKER else OVERLAY_FILLS[line]
        out.append(f'  <path d="M{SVG_MARGIN},{y} h12 v12 h-12 Z" fill="{fill}" stroke="{STROKE}"/>')
        out.append(f'  <text x="{SVG_MARGIN + 18}" y="{y + 11}">{escape(marker)} {escape(name)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(spec):
    """Render ``spec`` as a text grid or an SVG document (both UTF-8 text)."""
    _check_overlays(spec)
    if spec.format == SVG:
        return render_svg(spec.taxonomy, spec.overlays)
    return render_text(spec.taxonomy, spec.overlays)
