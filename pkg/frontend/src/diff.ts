/** Cell-level frame differencing so repaint cost tracks actual change. */

import type { Frame } from "./dump.js";

export interface CellChange {
	x: number;
	y: number;
	char: number;
	attr: number;
}

/** Every cell present in `next`; used for the first paint. */
export function allCells(next: Frame): CellChange[] {
	const changes: CellChange[] = [];
	for (let y = 0; y < next.height; y++) {
		for (let x = 0; x < next.width; x++) {
			const i = y * next.width + x;
			changes.push({ x, y, char: next.chars[i], attr: next.attrs[i] });
		}
	}
	return changes;
}

/** Cells where `next` differs from `prev`; frames must share dimensions. */
export function diffFrames(prev: Frame, next: Frame): CellChange[] {
	if (prev.width !== next.width || prev.height !== next.height) {
		throw new Error("cannot diff frames of different dimensions");
	}
	const changes: CellChange[] = [];
	for (let y = 0; y < next.height; y++) {
		for (let x = 0; x < next.width; x++) {
			const i = y * next.width + x;
			if (prev.chars[i] !== next.chars[i] || prev.attrs[i] !== next.attrs[i]) {
				changes.push({ x, y, char: next.chars[i], attr: next.attrs[i] });
			}
		}
	}
	return changes;
}
