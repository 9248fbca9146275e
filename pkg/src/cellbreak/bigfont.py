"""Bitmap "big font" rendering: ID-addressed fill-mask glyphs.

A glyph is a rectangular mask of full/empty flags; rendering paints the
whole glyph rectangle onto a screen buffer, full cells with the style's
fill character and color, empty cells with just the style's background.
Ids up to 255 alias the ASCII code of the character they depict; larger
ids are custom art.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import fonts
from .screen import Coord, ScreenBuffer, ScreenCell, make_attrs

MAX_CHAR_ID = 255

FILL_CHAR = 219  # solid rectangle in the extended-ASCII set
DEFAULT_FILL_FG = 4  # red
DEFAULT_BACKGROUND = 8  # dark gray, the classic 0x80 attribute


class UnsupportedSizeError(ValueError):
    """No builtin glyph set exists for the requested size label."""


class ReservedIdError(ValueError):
    """Ids up to 255 are reserved for ASCII-aliased glyphs."""


class InvalidGlyphError(ValueError):
    """Glyph mask is ragged or empty."""


class MissingGlyphError(KeyError):
    """No glyph registered under the requested id."""


@dataclass(frozen=True)
class Glyph:
    """Fixed-size fill mask; mask[y][x] is True where the glyph is solid."""

    width: int
    height: int
    mask: tuple[tuple[bool, ...], ...]

    @classmethod
    def from_rows(cls, rows: tuple[str, ...] | list[str]) -> "Glyph":
        """Build a glyph from `#`/`.` row strings."""
        if not rows or not rows[0]:
            raise InvalidGlyphError("glyph must be at least 1x1")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise InvalidGlyphError("glyph rows differ in length")
        mask = tuple(tuple(ch == "#" for ch in row) for row in rows)
        return cls(width=width, height=len(rows), mask=mask)

    def rows(self) -> list[str]:
        """Row strings in the same `#`/`.` form `from_rows` accepts."""
        return ["".join("#" if cell else "." for cell in row) for row in self.mask]


@dataclass(frozen=True)
class GlyphStyle:
    """Colors applied at render time; defaults match the classic templates."""

    fill_char: int = FILL_CHAR
    fill_fg: int = DEFAULT_FILL_FG
    background: int = DEFAULT_BACKGROUND


@dataclass
class GlyphTable:
    """Glyphs addressed by id, all character ids sharing one nominal size."""

    nominal_width: int
    nominal_height: int
    glyphs: dict[int, Glyph] = field(default_factory=dict)

    @property
    def size_label(self) -> str:
        return f"{self.nominal_width}x{self.nominal_height}"


def _scaled(glyph: Glyph, width: int, height: int) -> Glyph:
    """Nearest-neighbor rescale of a glyph mask."""
    mask = tuple(
        tuple(glyph.mask[y * glyph.height // height][x * glyph.width // width] for x in range(width))
        for y in range(height)
    )
    return Glyph(width=width, height=height, mask=mask)


def builtin_table(size_label: str) -> GlyphTable:
    """Builtin glyph set: digits, A-Z, space and colon at the given size."""
    if size_label == "3x5":
        source, w, h = fonts.FONT_3X5, 3, 5
    elif size_label == "5x7":
        source, w, h = fonts.FONT_5X7, 5, 7
    elif size_label == "9x11":
        source, w, h = fonts.FONT_5X7, 9, 11
    else:
        raise UnsupportedSizeError(f"no builtin glyph set for size {size_label!r}")
    table = GlyphTable(nominal_width=w, nominal_height=h)
    for ch, rows in source.items():
        glyph = Glyph.from_rows(rows)
        if (glyph.width, glyph.height) != (w, h):
            glyph = _scaled(glyph, w, h)
        table.glyphs[ord(ch)] = glyph
    return table


def register_glyph(table: GlyphTable, glyph_id: int, glyph: Glyph) -> GlyphTable:
    """Register custom art under an id above the ASCII range; replaces."""
    if glyph_id <= MAX_CHAR_ID:
        raise ReservedIdError(f"id {glyph_id} is reserved for character glyphs")
    table.glyphs[glyph_id] = glyph
    return table


def glyph_for(table: GlyphTable, glyph_id: int) -> Glyph:
    try:
        return table.glyphs[glyph_id]
    except KeyError:
        raise MissingGlyphError(glyph_id) from None


def render_glyph(
    buf: ScreenBuffer,
    table: GlyphTable,
    glyph_id: int,
    origin: Coord,
    style: GlyphStyle = GlyphStyle(),
) -> ScreenBuffer:
    """Paint one glyph rectangle at `origin`, clipped at the buffer edges.

    Full mask cells get the style's fill character and foreground; empty
    cells are written too, carrying only the background color, so glyphs
    are opaque rectangles.
    """
    glyph = glyph_for(table, glyph_id)
    out = buf.copy()
    _paint_glyph(out, glyph, origin, style)
    return out


def _paint_glyph(buf: ScreenBuffer, glyph: Glyph, origin: Coord, style: GlyphStyle) -> None:
    full = ScreenCell(style.fill_char, make_attrs(style.fill_fg, style.background))
    empty = ScreenCell(0, make_attrs(0, style.background))
    for gy in range(glyph.height):
        y = origin.y + gy
        if not 0 <= y < buf.height:
            continue
        row = glyph.mask[gy]
        for gx in range(glyph.width):
            x = origin.x + gx
            if not 0 <= x < buf.width:
                continue
            buf._set(x, y, full if row[gx] else empty)


def render_big_string(
    buf: ScreenBuffer,
    table: GlyphTable,
    text: str,
    origin: Coord,
    style: GlyphStyle = GlyphStyle(),
    spacing: int = 1,
) -> ScreenBuffer:
    """Render text as one line of glyphs, advancing by glyph width + spacing.

    Characters without a glyph fall back to the space glyph; if the table
    has no space either, they just advance by the nominal width.
    """
    if spacing < 0:
        raise ValueError("spacing must be >= 0")
    if not text:
        return buf
    out = buf.copy()
    x = origin.x
    for ch in text:
        glyph_id = _resolve_char(table, ch)
        if glyph_id is None:
            x += table.nominal_width + spacing
            continue
        glyph = table.glyphs[glyph_id]
        _paint_glyph(out, glyph, Coord(x, origin.y), style)
        x += glyph.width + spacing
    return out


def measure(table: GlyphTable, text: str, spacing: int = 1) -> tuple[int, int]:
    """Width and height in cells of a rendered string; (0, 0) when empty."""
    if spacing < 0:
        raise ValueError("spacing must be >= 0")
    if not text:
        return (0, 0)
    width = 0
    height = 0
    for i, ch in enumerate(text):
        glyph_id = _resolve_char(table, ch)
        if glyph_id is None:
            width += table.nominal_width
        else:
            glyph = table.glyphs[glyph_id]
            width += glyph.width
            height = max(height, glyph.height)
        if i:
            width += spacing
    return (width, height)


def _resolve_char(table: GlyphTable, ch: str) -> int | None:
    code = ord(ch)
    if code in table.glyphs:
        return code
    if ord(" ") in table.glyphs:
        return ord(" ")
    return None


def parse_glyph_templates(text: str) -> list[tuple[int, Glyph]]:
    """Parse the glyph template file format.

    Each record is a `glyph <id> <width> <height>` header line followed by
    `height` rows of `#`/`.` characters, exactly `width` wide.
    """
    entries: list[tuple[int, Glyph]] = []
    lines = text.splitlines()
    pos = 0
    while pos < len(lines):
        line = lines[pos]
        pos += 1
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 4 or parts[0] != "glyph":
            raise InvalidGlyphError(f"bad template header: {line!r}")
        try:
            glyph_id, width, height = int(parts[1]), int(parts[2]), int(parts[3])
        except ValueError:
            raise InvalidGlyphError(f"bad template header: {line!r}") from None
        if glyph_id < 0 or width < 1 or height < 1:
            raise InvalidGlyphError(f"bad template header: {line!r}")
        rows = lines[pos : pos + height]
        pos += height
        if len(rows) != height:
            raise InvalidGlyphError(f"glyph {glyph_id}: truncated mask")
        for row in rows:
            if len(row) != width or any(ch not in "#." for ch in row):
                raise InvalidGlyphError(f"glyph {glyph_id}: bad mask row {row!r}")
        entries.append((glyph_id, Glyph.from_rows(tuple(rows))))
    return entries


def format_glyph_templates(entries: list[tuple[int, Glyph]]) -> str:
    """Inverse of `parse_glyph_templates`."""
    lines: list[str] = []
    for glyph_id, glyph in entries:
        lines.append(f"glyph {glyph_id} {glyph.width} {glyph.height}")
        lines.extend(glyph.rows())
    return "\n".join(lines) + "\n" if lines else ""
