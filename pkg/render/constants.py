TEXT = "text"
SVG = "svg"

RENDER_FORMAT = (
    (TEXT, "Monospaced text grid"),
    (SVG, "SVG 1.1 document"),
)

MAX_OVERLAYS = 2
BOTH_MARKER = "[12]"

CELL_PADDING = 2

SVG_ROW_NAME_WIDTH = 220
SVG_CELL_WIDTH = 180
SVG_CELL_HEIGHT = 28
SVG_HEADER_HEIGHT = 40
SVG_LEGEND_LINE_HEIGHT = 24
SVG_MARGIN = 8
SVG_TEXT_INSET = 6
# Advance of one glyph at 12px monospace (0.6em).
SVG_CHAR_WIDTH = 7.2

UNMARKED_FILL = "#ffffff"
OVERLAY_FILLS = ("#9fd89f", "#f7c16b")
BOTH_FILL = "url(#both)"
APART_FILL = "url(#apart)"
STROKE = "#333333"
