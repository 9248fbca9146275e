/**
 * Parsing for the engine's frame dump format and per-tick status lines.
 *
 * A dump starts with `width height`, followed by `height` rows of glyph
 * characters (char code 0 printed as `.`) and `height` rows of
 * two-hex-digit attribute bytes. In serve mode each dump is followed by
 * `score=`, `lives=` and `phase=` lines and one blank separator line.
 */

export interface Frame {
	width: number;
	height: number;
	/** char codes, row-major; `.` rows decode back to code 0 */
	chars: Uint8Array;
	/** attribute bytes, row-major; low nibble fg, high nibble bg */
	attrs: Uint8Array;
}

export interface TickStatus {
	score: number;
	lives: number;
	phase: string;
}

export interface TickResponse {
	frame: Frame;
	status: TickStatus;
}

/** Lines a full serve-mode response occupies once the header is known. */
export function responseLineCount(height: number): number {
	return 1 + 2 * height + 3 + 1;
}

export function parseFrame(lines: string[]): Frame {
	const header = lines[0]?.match(/^(\d+) (\d+)$/);
	if (!header) {
		throw new Error(`bad frame header: ${JSON.stringify(lines[0])}`);
	}
	const width = parseInt(header[1], 10);
	const height = parseInt(header[2], 10);
	if (lines.length < 1 + 2 * height) {
		throw new Error(`truncated frame: got ${lines.length - 1} of ${2 * height} rows`);
	}
	const chars = new Uint8Array(width * height);
	const attrs = new Uint8Array(width * height);
	for (let y = 0; y < height; y++) {
		const row = lines[1 + y];
		if (row.length !== width) {
			throw new Error(`glyph row ${y} has length ${row.length}, want ${width}`);
		}
		for (let x = 0; x < width; x++) {
			const ch = row[x];
			chars[y * width + x] = ch === "." ? 0 : ch.charCodeAt(0);
		}
	}
	for (let y = 0; y < height; y++) {
		const row = lines[1 + height + y];
		if (row.length !== 2 * width) {
			throw new Error(`attr row ${y} has length ${row.length}, want ${2 * width}`);
		}
		for (let x = 0; x < width; x++) {
			const byte = parseInt(row.slice(2 * x, 2 * x + 2), 16);
			if (Number.isNaN(byte)) {
				throw new Error(`bad attr byte in row ${y} col ${x}`);
			}
			attrs[y * width + x] = byte;
		}
	}
	return { width, height, chars, attrs };
}

function parseStatusLine(line: string, key: string): string {
	const prefix = `${key}=`;
	if (!line.startsWith(prefix)) {
		throw new Error(`expected ${prefix}..., got ${JSON.stringify(line)}`);
	}
	return line.slice(prefix.length);
}

export function parseTickResponse(lines: string[]): TickResponse {
	const frame = parseFrame(lines);
	const base = 1 + 2 * frame.height;
	const status: TickStatus = {
		score: parseInt(parseStatusLine(lines[base], "score"), 10),
		lives: parseInt(parseStatusLine(lines[base + 1], "lives"), 10),
		phase: parseStatusLine(lines[base + 2], "phase"),
	};
	return { frame, status };
}

/**
 * Incremental reader: feed chunks, take complete serve-mode responses out.
 * The first response's header fixes the expected block size.
 */
export class ResponseReader {
	private buffer = "";
	private lines: string[] = [];
	private blockLines: number | null = null;

	feed(chunk: string): TickResponse[] {
		this.buffer += chunk;
		const pieces = this.buffer.split("\n");
		this.buffer = pieces.pop() ?? "";
		this.lines.push(...pieces);

		const responses: TickResponse[] = [];
		for (;;) {
			if (this.blockLines === null) {
				if (this.lines.length === 0) break;
				const header = this.lines[0].match(/^(\d+) (\d+)$/);
				if (!header) {
					throw new Error(`bad frame header: ${JSON.stringify(this.lines[0])}`);
				}
				this.blockLines = responseLineCount(parseInt(header[2], 10));
			}
			if (this.lines.length < this.blockLines) break;
			const block = this.lines.splice(0, this.blockLines);
			if (block[this.blockLines - 1] !== "") {
				throw new Error("missing blank separator after tick response");
			}
			responses.push(parseTickResponse(block));
		}
		return responses;
	}
}
