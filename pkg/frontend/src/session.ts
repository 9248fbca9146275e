/**
 * The interactive tick loop. Keyboard bytes collect between ticks; every
 * `tickMs` the queued tokens go to the engine as one script line, the
 * returned frame is diffed against the previous one and only changed
 * cells are repainted. The line log doubles as a replay script.
 */

import type { TickResponse } from "./dump.js";
import { allCells, diffFrames } from "./diff.js";
import type { EngineClient } from "./engine.js";
import { decodeKeys, type EventToken } from "./keys.js";
import { paintChanges } from "./paint.js";

/** Terminal surface the session paints to; real TTY or test fake. */
export interface TerminalIO {
	columns: number;
	rows: number;
	enterGame(): void;
	write(data: string): void;
	restore(): void;
	onInput(handler: (chunk: Buffer | string) => void): void;
	offInput(): void;
}

export interface SessionOptions {
	tickMs: number;
	monochrome: boolean;
	/** stop after this many ticks even if the game is still going (0 = never) */
	maxTicks?: number;
}

export interface SessionResult {
	finalStatus: { score: number; lives: number; phase: string };
	/** one line per tick, replayable through the engine CLI */
	scriptLines: string[];
	ticks: number;
	cellsRepainted: number;
}

const sleep = (ms: number) => new Promise<void>((resolve) => setTimeout(resolve, ms));

export class Session {
	private queue: EventToken[] = [];
	private scriptLines: string[] = [];
	private cellsRepainted = 0;

	constructor(
		private terminal: TerminalIO,
		private engine: EngineClient,
		private options: SessionOptions,
	) {}

	async run(): Promise<SessionResult> {
		let ticks = 0;
		try {
			const first = await this.engine.start();
			this.checkTerminalSize(first);
			this.terminal.enterGame();
			this.terminal.onInput((chunk) => {
				this.queue.push(...decodeKeys(chunk));
			});
			this.paint(null, first);

			let previous = first;
			for (;;) {
				if (this.options.maxTicks && ticks >= this.options.maxTicks) {
					break;
				}
				await sleep(this.options.tickMs);
				const tokens = this.queue.splice(0);
				const line = tokens.join(",");
				this.scriptLines.push(line);
				const response = await this.engine.tick(line);
				this.paint(previous, response);
				previous = response;
				ticks++;
				if (response.status.phase === "quit" || response.status.phase === "game_over") {
					return this.finish(response, ticks);
				}
			}
			return this.finish(previous, ticks);
		} finally {
			this.terminal.offInput();
			this.terminal.restore();
			await this.engine.stop();
		}
	}

	private finish(last: TickResponse, ticks: number): SessionResult {
		return {
			finalStatus: last.status,
			scriptLines: [...this.scriptLines],
			ticks,
			cellsRepainted: this.cellsRepainted,
		};
	}

	private checkTerminalSize(first: TickResponse): void {
		const { width, height } = first.frame;
		if (this.terminal.columns < width || this.terminal.rows < height) {
			throw new Error(
				`terminal is ${this.terminal.columns}x${this.terminal.rows}, ` +
					`need at least ${width}x${height}`,
			);
		}
	}

	private paint(previous: TickResponse | null, next: TickResponse): void {
		const changes = previous
			? diffFrames(previous.frame, next.frame)
			: allCells(next.frame);
		this.cellsRepainted += changes.length;
		if (changes.length > 0) {
			this.terminal.write(paintChanges(changes, this.options.monochrome));
		}
	}
}
