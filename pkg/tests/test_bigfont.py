"""Big-font glyph tables, rendering footprints and the template format."""

import pytest
from hypothesis import given, strategies as st

from cellbreak.bigfont import (
    Glyph,
    GlyphStyle,
    InvalidGlyphError,
    MissingGlyphError,
    ReservedIdError,
    UnsupportedSizeError,
    builtin_table,
    format_glyph_templates,
    glyph_for,
    measure,
    parse_glyph_templates,
    register_glyph,
    render_big_string,
    render_glyph,
)
from cellbreak.screen import Coord, ScreenCell, diff, make_attrs, new_buffer

STYLE = GlyphStyle()  # fill 219, red on the gray background
FULL = ScreenCell(219, make_attrs(4, 8))
EMPTY = ScreenCell(0, make_attrs(0, 8))


class TestBuiltinTables:
    @pytest.mark.parametrize("label,size", [("3x5", (3, 5)), ("5x7", (5, 7)), ("9x11", (9, 11))])
    def test_coverage_and_sizes(self, label, size):
        table = builtin_table(label)
        required = "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ :"
        for ch in required:
            glyph = glyph_for(table, ord(ch))
            assert (glyph.width, glyph.height) == size

    def test_unknown_size_label(self):
        with pytest.raises(UnsupportedSizeError):
            builtin_table("4x6")

    def test_digit_one_is_rightmost_column(self):
        glyph = glyph_for(builtin_table("3x5"), ord("1"))
        assert glyph.rows() == ["..#"] * 5

    def test_space_is_all_empty(self):
        glyph = glyph_for(builtin_table("3x5"), ord(" "))
        assert glyph.rows() == ["..."] * 5

    def test_letter_a_present(self):
        glyph = glyph_for(builtin_table("3x5"), ord("A"))
        assert (glyph.width, glyph.height) == (3, 5)
        assert any(any(row) for row in glyph.mask)

    def test_ascii_aliasing(self):
        table = builtin_table("5x7")
        for code in list(table.glyphs):
            if code <= 255:
                assert chr(code) in "0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZ :"


class TestRegistration:
    def test_custom_roundtrip(self):
        table = builtin_table("3x5")
        logo = Glyph.from_rows(["#" * 9] * 13)
        register_glyph(table, 300, logo)
        assert glyph_for(table, 300) is logo

    def test_reserved_id_rejected(self):
        with pytest.raises(ReservedIdError):
            register_glyph(builtin_table("3x5"), 65, Glyph.from_rows(["#"]))

    def test_reregistration_replaces(self):
        table = builtin_table("3x5")
        first = Glyph.from_rows(["#."])
        second = Glyph.from_rows([".#"])
        register_glyph(table, 300, first)
        register_glyph(table, 300, second)
        assert glyph_for(table, 300) is second

    def test_missing_glyph(self):
        with pytest.raises(MissingGlyphError):
            glyph_for(builtin_table("3x5"), 999)

    def test_custom_range_lookup(self):
        table = builtin_table("3x5")
        register_glyph(table, 256, Glyph.from_rows(["##"]))
        assert glyph_for(table, 256).width == 2

    def test_ragged_mask_rejected(self):
        with pytest.raises(InvalidGlyphError):
            Glyph.from_rows(["##", "#"])


class TestRenderGlyph:
    def test_digit_one_footprint(self):
        buf = new_buffer(10, 10)
        out = render_glyph(buf, builtin_table("3x5"), ord("1"), Coord(0, 0), STYLE)
        for y in range(5):
            for x in range(3):
                expected = FULL if x == 2 else EMPTY
                assert out.cell_at(Coord(x, y)) == expected
        # nothing outside the 3x5 rectangle
        changed = {at for at, _ in diff(buf, out)}
        assert changed <= {Coord(x, y) for x in range(3) for y in range(5)}

    def test_space_writes_background_rectangle(self):
        buf = new_buffer(10, 10)
        out = render_glyph(buf, builtin_table("3x5"), ord(" "), Coord(2, 3), STYLE)
        changed = {at for at, _ in diff(buf, out)}
        assert changed == {Coord(x, y) for x in range(2, 5) for y in range(3, 8)}
        assert all(cell == EMPTY for _, cell in diff(buf, out))

    def test_clipped_at_right_edge(self):
        buf = new_buffer(80, 10)
        out = render_glyph(buf, builtin_table("3x5"), ord("1"), Coord(78, 0), STYLE)
        changed = {at for at, _ in diff(buf, out)}
        # the filled column (x offset 2) is clipped away; only background remains
        assert changed == {Coord(x, y) for x in (78, 79) for y in range(5)}
        assert all(cell == EMPTY for _, cell in diff(buf, out))

    def test_missing_glyph_raises(self):
        with pytest.raises(MissingGlyphError):
            render_glyph(new_buffer(5, 5), builtin_table("3x5"), 777, Coord(0, 0), STYLE)

    def test_style_changes_colors_not_footprint(self):
        # Sentinel base so every written cell shows up in the diff.
        buf = new_buffer(10, 10, ScreenCell(1, 0xFF))
        red = render_glyph(buf, builtin_table("3x5"), ord("8"), Coord(1, 1), STYLE)
        blue = render_glyph(
            buf, builtin_table("3x5"), ord("8"), Coord(1, 1), GlyphStyle(fill_fg=9, background=0)
        )
        footprint = {Coord(x, y) for x in range(1, 4) for y in range(1, 6)}
        assert {at for at, _ in diff(buf, red)} == footprint
        assert {at for at, _ in diff(buf, blue)} == footprint


class TestRenderBigString:
    def test_empty_string_unchanged(self):
        buf = new_buffer(20, 10)
        assert render_big_string(buf, builtin_table("3x5"), "", Coord(0, 0), STYLE, 1) == buf

    def test_two_ones_fill_columns(self):
        buf = new_buffer(20, 10)
        out = render_big_string(buf, builtin_table("3x5"), "11", Coord(0, 0), STYLE, 1)
        filled = {at for at, cell in diff(buf, out) if cell == FULL}
        assert filled == {Coord(x, y) for x in (2, 6) for y in range(5)}

    def test_space_advances_like_glyph(self):
        table = builtin_table("3x5")
        base = new_buffer(30, 10)
        via_string = render_big_string(base, table, "1 1", Coord(0, 0), STYLE, 1)
        composed = render_glyph(base, table, ord("1"), Coord(0, 0), STYLE)
        composed = render_glyph(composed, table, ord(" "), Coord(4, 0), STYLE)
        composed = render_glyph(composed, table, ord("1"), Coord(8, 0), STYLE)
        assert via_string == composed

    def test_unknown_char_renders_as_space(self):
        table = builtin_table("3x5")
        base = new_buffer(30, 10)
        assert render_big_string(base, table, "1?1", Coord(0, 0), STYLE, 1) == render_big_string(
            base, table, "1 1", Coord(0, 0), STYLE, 1
        )

    @given(st.text(alphabet="01AZ :", max_size=5), st.integers(0, 3))
    def test_matches_sequential_glyph_renders(self, text, spacing):
        table = builtin_table("3x5")
        base = new_buffer(60, 8)
        via_string = render_big_string(base, table, text, Coord(0, 1), STYLE, spacing)
        composed = base
        x = 0
        for ch in text:
            composed = render_glyph(composed, table, ord(ch), Coord(x, 1), STYLE)
            x += 3 + spacing
        assert via_string == composed


class TestMeasure:
    def test_empty(self):
        assert measure(builtin_table("3x5"), "", 1) == (0, 0)

    def test_two_ones(self):
        assert measure(builtin_table("3x5"), "11", 1) == (7, 5)

    def test_score_word(self):
        assert measure(builtin_table("3x5"), "SCORE", 1) == (19, 5)

    def test_wide_custom_glyph_dominates_height(self):
        table = builtin_table("3x5")
        register_glyph(table, 300, Glyph.from_rows(["#" * 10] * 13))
        width, height = measure(table, "1" + chr(300), 1)
        assert (width, height) == (3 + 1 + 10, 13)


class TestTemplateFormat:
    def test_round_trip(self):
        entries = [
            (300, Glyph.from_rows(["##.", ".#.", "..#"])),
            (301, Glyph.from_rows(["#"])),
        ]
        text = format_glyph_templates(entries)
        parsed = parse_glyph_templates(text)
        assert parsed == entries

    def test_exact_text_form(self):
        text = format_glyph_templates([(300, Glyph.from_rows(["#.", ".#"]))])
        assert text == "glyph 300 2 2\n#.\n.#\n"

    def test_bad_header_rejected(self):
        with pytest.raises(InvalidGlyphError):
            parse_glyph_templates("bitmap 300 2 2\n##\n##\n")

    def test_bad_mask_char_rejected(self):
        with pytest.raises(InvalidGlyphError):
            parse_glyph_templates("glyph 300 2 1\n#x\n")

    def test_truncated_mask_rejected(self):
        with pytest.raises(InvalidGlyphError):
            parse_glyph_templates("glyph 300 2 3\n##\n##\n")

    def test_blank_lines_between_records_ok(self):
        text = "glyph 300 1 1\n#\n\nglyph 301 1 1\n.\n"
        assert len(parse_glyph_templates(text)) == 2
