/**
 * ANSI output for cell changes: cursor moves, 16-color SGR, glyph chars.
 *
 * Palette indices 0-7 map to the normal terminal colors, 8-15 to the
 * bright ones (index 8 is bright black). Under NO_COLOR no SGR is ever
 * emitted and empty cells degrade to plain spaces.
 */

import type { CellChange } from "./diff.js";

const FG_BASE = [30, 31, 32, 33, 34, 35, 36, 37];
const FG_BRIGHT = [90, 91, 92, 93, 94, 95, 96, 97];
const BG_BASE = [40, 41, 42, 43, 44, 45, 46, 47];
const BG_BRIGHT = [100, 101, 102, 103, 104, 105, 106, 107];

// Console palette order is blue-led (1 = blue, 4 = red); ANSI is
// red-led (1 = red, 4 = blue), so swap those bits when mapping.
const PALETTE_TO_ANSI = [0, 4, 2, 6, 1, 5, 3, 7];

export function sgrFor(attr: number, monochrome: boolean): string {
	if (monochrome) {
		return "";
	}
	const fg = attr & 0x0f;
	const bg = attr >> 4;
	const fgAnsi = fg < 8 ? FG_BASE[PALETTE_TO_ANSI[fg]] : FG_BRIGHT[PALETTE_TO_ANSI[fg - 8]];
	const bgAnsi = bg < 8 ? BG_BASE[PALETTE_TO_ANSI[bg]] : BG_BRIGHT[PALETTE_TO_ANSI[bg - 8]];
	return `\x1b[${fgAnsi};${bgAnsi}m`;
}

/** Display character for an engine char code. */
export function charFor(code: number): string {
	if (code === 0) {
		return " ";
	}
	if (code === 219) {
		return "█"; // full block
	}
	if (code >= 32 && code < 127) {
		return String.fromCharCode(code);
	}
	return " ";
}

function moveTo(x: number, y: number): string {
	return `\x1b[${y + 1};${x + 1}H`;
}

/**
 * Escape stream that repaints exactly the given cells. Consecutive
 * changes on one row share cursor moves, and SGR is only re-emitted when
 * the attribute actually changes.
 */
export function paintChanges(changes: CellChange[], monochrome: boolean): string {
	if (changes.length === 0) {
		return "";
	}
	let out = "";
	let lastAttr = -1;
	let cursorX = -1;
	let cursorY = -1;
	for (const cell of changes) {
		if (cell.y !== cursorY || cell.x !== cursorX) {
			out += moveTo(cell.x, cell.y);
		}
		if (cell.attr !== lastAttr) {
			out += sgrFor(cell.attr, monochrome);
			lastAttr = cell.attr;
		}
		out += charFor(cell.char);
		cursorX = cell.x + 1;
		cursorY = cell.y;
	}
	out += monochrome ? "" : "\x1b[0m";
	return out;
}
