"""In-memory model of a console output surface.

A screen buffer is a 2D grid of cells, each carrying an 8-bit character
code and an 8-bit color attribute (low nibble = foreground, high nibble =
background, 16-color console palette). Operations are value-semantic:
they return an updated buffer and never modify their input.
"""

from __future__ import annotations

from typing import NamedTuple, Sequence


class InvalidDimensionError(ValueError):
    """Buffer dimensions must be at least 1x1."""


class BoundsError(IndexError):
    """Coordinate addressed a cell outside the buffer."""


class RaggedSourceError(ValueError):
    """Blit source rows are not all the same length."""


class ShapeMismatchError(ValueError):
    """Two buffers that must share dimensions do not."""


class PatchError(ValueError):
    """Patch violates its invariants (duplicate or out-of-bounds coords)."""


class ScreenCell(NamedTuple):
    """One console cell: character code 0-255 plus color attribute byte."""

    char_code: int
    attrs: int


class Coord(NamedTuple):
    """Cell position: x = column (grows right), y = row (grows down)."""

    x: int
    y: int


class Rect(NamedTuple):
    """Inclusive cell rectangle."""

    left: int
    top: int
    right: int
    bottom: int

    @property
    def width(self) -> int:
        return self.right - self.left + 1

    @property
    def height(self) -> int:
        return self.bottom - self.top + 1

    def contains(self, at: Coord) -> bool:
        return self.left <= at.x <= self.right and self.top <= at.y <= self.bottom


# One patch entry per changed cell; coordinates are unique within a patch.
CellPatch = list[tuple[Coord, ScreenCell]]

EMPTY_CELL = ScreenCell(0, 0)


def make_attrs(fg: int, bg: int) -> int:
    """Pack foreground and background palette indices into one attribute byte."""
    if not (0 <= fg <= 15 and 0 <= bg <= 15):
        raise ValueError(f"color indices must be in 0..15, got fg={fg} bg={bg}")
    return fg | (bg << 4)


def split_attrs(attrs: int) -> tuple[int, int]:
    """Unpack an attribute byte into (foreground, background) indices."""
    if not 0 <= attrs <= 255:
        raise ValueError(f"attribute byte out of range: {attrs}")
    return attrs & 0x0F, attrs >> 4


def _check_cell(cell: ScreenCell) -> ScreenCell:
    if not (0 <= cell.char_code <= 255 and 0 <= cell.attrs <= 255):
        raise ValueError(f"cell fields must fit in a byte: {cell}")
    return cell


class ScreenBuffer:
    """A width x height grid of cells, stored row-major.

    Internally two bytearrays (char codes, attributes) so copies stay cheap;
    all public operations treat buffers as immutable values.
    """

    __slots__ = ("width", "height", "_chars", "_attrs")

    def __init__(self, width: int, height: int, chars: bytearray, attrs: bytearray):
        self.width = width
        self.height = height
        self._chars = chars
        self._attrs = attrs

    def copy(self) -> "ScreenBuffer":
        return ScreenBuffer(
            self.width, self.height, bytearray(self._chars), bytearray(self._attrs)
        )

    def _set(self, x: int, y: int, cell: ScreenCell) -> None:
        # Package-internal, bounds already checked by the caller.
        i = y * self.width + x
        self._chars[i] = cell.char_code
        self._attrs[i] = cell.attrs

    def cell_at(self, at: Coord) -> ScreenCell:
        if not (0 <= at.x < self.width and 0 <= at.y < self.height):
            raise BoundsError(f"{at} outside {self.width}x{self.height} buffer")
        i = at.y * self.width + at.x
        return ScreenCell(self._chars[i], self._attrs[i])

    def cells(self) -> list[ScreenCell]:
        return [ScreenCell(c, a) for c, a in zip(self._chars, self._attrs)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ScreenBuffer):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self._chars == other._chars
            and self._attrs == other._attrs
        )

    def __hash__(self) -> int:  # pragma: no cover - buffers are not dict keys
        return hash((self.width, self.height, bytes(self._chars), bytes(self._attrs)))

    def __repr__(self) -> str:
        return f"ScreenBuffer({self.width}x{self.height})"


def new_buffer(width: int, height: int, fill: ScreenCell = EMPTY_CELL) -> ScreenBuffer:
    """Create a buffer with every cell set to `fill`."""
    if width < 1 or height < 1:
        raise InvalidDimensionError(f"buffer dimensions must be >= 1, got {width}x{height}")
    _check_cell(fill)
    n = width * height
    return ScreenBuffer(
        width, height, bytearray([fill.char_code]) * n, bytearray([fill.attrs]) * n
    )


def put_cell(buf: ScreenBuffer, at: Coord, cell: ScreenCell) -> ScreenBuffer:
    """Write one cell; the coordinate must be inside the buffer."""
    if not (0 <= at.x < buf.width and 0 <= at.y < buf.height):
        raise BoundsError(f"{at} outside {buf.width}x{buf.height} buffer")
    _check_cell(cell)
    out = buf.copy()
    out._set(at.x, at.y, cell)
    return out


def fill_rect(buf: ScreenBuffer, area: Rect, cell: ScreenCell) -> ScreenBuffer:
    """Fill every cell of `area` that lies inside the buffer; clips silently."""
    _check_cell(cell)
    out = buf.copy()
    _fill_rect_inplace(out, area, cell)
    return out


def _fill_rect_inplace(buf: ScreenBuffer, area: Rect, cell: ScreenCell) -> None:
    x0 = max(area.left, 0)
    x1 = min(area.right, buf.width - 1)
    y0 = max(area.top, 0)
    y1 = min(area.bottom, buf.height - 1)
    if x0 > x1 or y0 > y1:
        return
    n = x1 - x0 + 1
    char_row = bytes([cell.char_code]) * n
    attr_row = bytes([cell.attrs]) * n
    for y in range(y0, y1 + 1):
        i = y * buf.width + x0
        buf._chars[i : i + n] = char_row
        buf._attrs[i : i + n] = attr_row


def blit(
    buf: ScreenBuffer, src: Sequence[Sequence[ScreenCell]], origin: Coord
) -> ScreenBuffer:
    """Copy a rectangular cell grid onto the buffer, top-left at `origin`.

    The origin may be negative; any part of the source that falls outside
    the buffer is clipped away. Cells are overwritten, never blended.
    """
    if src and any(len(row) != len(src[0]) for row in src):
        raise RaggedSourceError("blit source rows differ in length")
    out = buf.copy()
    for dy, row in enumerate(src):
        y = origin.y + dy
        if not 0 <= y < out.height:
            continue
        for dx, cell in enumerate(row):
            x = origin.x + dx
            if not 0 <= x < out.width:
                continue
            _check_cell(cell)
            out._set(x, y, cell)
    return out


def diff(before: ScreenBuffer, after: ScreenBuffer) -> CellPatch:
    """List every cell where the two same-shaped buffers differ."""
    if before.width != after.width or before.height != after.height:
        raise ShapeMismatchError(
            f"cannot diff {before.width}x{before.height} against {after.width}x{after.height}"
        )
    patch: CellPatch = []
    if before._chars == after._chars and before._attrs == after._attrs:
        return patch
    w = before.width
    bc, ba, ac, aa = before._chars, before._attrs, after._chars, after._attrs
    for i in range(len(bc)):
        if bc[i] != ac[i] or ba[i] != aa[i]:
            patch.append((Coord(i % w, i // w), ScreenCell(ac[i], aa[i])))
    return patch


def apply_patch(buf: ScreenBuffer, patch: CellPatch) -> ScreenBuffer:
    """Apply a patch produced by `diff`; validates the patch invariants."""
    seen: set[Coord] = set()
    out = buf.copy()
    for at, cell in patch:
        if at in seen:
            raise PatchError(f"duplicate coordinate in patch: {at}")
        seen.add(at)
        if not (0 <= at.x < out.width and 0 <= at.y < out.height):
            raise PatchError(f"patch coordinate {at} outside buffer")
        _check_cell(cell)
        out._set(at.x, at.y, cell)
    return out


def dump(buf: ScreenBuffer) -> str:
    """Render the buffer in the plain-text frame dump format.

    Line 1 is `width height`; then `height` lines of glyph characters
    (char code 0 shown as `.`, others as the latin-1 character of their
    code); then `height` lines of two-hex-digit attribute bytes.
    """
    lines = [f"{buf.width} {buf.height}"]
    w = buf.width
    for y in range(buf.height):
        row = buf._chars[y * w : (y + 1) * w]
        lines.append("".join("." if c == 0 else chr(c) for c in row))
    for y in range(buf.height):
        row = buf._attrs[y * w : (y + 1) * w]
        lines.append("".join(format(a, "02x") for a in row))
    return "\n".join(lines) + "\n"


def dump_bytes(buf: ScreenBuffer) -> bytes:
    """Frame dump encoded as latin-1 bytes (the hashing/golden-file form)."""
    return dump(buf).encode("latin-1")
