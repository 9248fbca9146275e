/**
 * Raw-mode input bytes to engine event tokens.
 *
 * Arrow keys arrive as escape sequences that vary by terminal, so the
 * WASD-style `a`/`d` aliases map to the same tokens and recorded
 * sessions replay identically either way. Ctrl-C is treated as ESC
 * because raw mode swallows the usual signal.
 */

export type EventToken = "LEFT" | "RIGHT" | "ESC" | "KEY";

const ESC = 0x1b;

export function decodeKeys(chunk: Buffer | string): EventToken[] {
	const data = typeof chunk === "string" ? Buffer.from(chunk, "latin1") : chunk;
	const tokens: EventToken[] = [];
	let i = 0;
	while (i < data.length) {
		const byte = data[i];
		if (byte === ESC) {
			if (i + 2 < data.length && data[i + 1] === 0x5b) {
				const final = data[i + 2];
				if (final === 0x44) {
					tokens.push("LEFT");
					i += 3;
					continue;
				}
				if (final === 0x43) {
					tokens.push("RIGHT");
					i += 3;
					continue;
				}
				// some other CSI sequence: skip to its final byte
				let j = i + 2;
				while (j < data.length && (data[j] < 0x40 || data[j] > 0x7e)) {
					j++;
				}
				i = Math.min(j + 1, data.length);
				continue;
			}
			tokens.push("ESC");
			i += 1;
			continue;
		}
		if (byte === 0x03) {
			tokens.push("ESC"); // Ctrl-C in raw mode
			i += 1;
			continue;
		}
		const ch = String.fromCharCode(byte).toLowerCase();
		if (ch === "a") {
			tokens.push("LEFT");
		} else if (ch === "d") {
			tokens.push("RIGHT");
		} else if (byte >= 0x20 && byte < 0x7f) {
			tokens.push("KEY");
		}
		i += 1;
	}
	return tokens;
}
