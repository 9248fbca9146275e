/**
 * Real TTY backend: raw mode, alternate screen, hidden cursor, and
 * unconditional restoration on every exit path including signals.
 */

import type { TerminalIO } from "./session.js";

const ENTER = "\x1b[?1049h\x1b[2J\x1b[H\x1b[?25l";
const LEAVE = "\x1b[0m\x1b[?25h\x1b[?1049l";

export class TtyTerminal implements TerminalIO {
	private handler: ((chunk: Buffer) => void) | null = null;
	private entered = false;
	private restored = false;
	private onSignal = () => {
		this.restore();
		process.exit(130);
	};

	get columns(): number {
		return process.stdout.columns ?? 0;
	}

	get rows(): number {
		return process.stdout.rows ?? 0;
	}

	static checkInteractive(): void {
		if (!process.stdin.isTTY || !process.stdout.isTTY) {
			throw new Error("an interactive terminal is required (stdin/stdout must be a TTY)");
		}
	}

	enterGame(): void {
		TtyTerminal.checkInteractive();
		process.stdin.setRawMode(true);
		process.stdin.resume();
		process.stdout.write(ENTER);
		process.on("SIGINT", this.onSignal);
		process.on("SIGTERM", this.onSignal);
		this.entered = true;
		this.restored = false;
	}

	write(data: string): void {
		process.stdout.write(data);
	}

	restore(): void {
		if (!this.entered || this.restored) {
			return;
		}
		this.restored = true;
		process.removeListener("SIGINT", this.onSignal);
		process.removeListener("SIGTERM", this.onSignal);
		process.stdout.write(LEAVE);
		if (process.stdin.isTTY) {
			process.stdin.setRawMode(false);
		}
		process.stdin.pause();
	}

	onInput(handler: (chunk: Buffer | string) => void): void {
		this.handler = handler;
		process.stdin.on("data", handler);
	}

	offInput(): void {
		if (this.handler) {
			process.stdin.removeListener("data", this.handler);
			this.handler = null;
		}
	}
}
