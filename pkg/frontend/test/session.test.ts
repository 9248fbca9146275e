import { describe, expect, it } from "vitest";
import type { TickResponse } from "../src/dump.js";
import type { EngineClient } from "../src/engine.js";
import { Session, type TerminalIO } from "../src/session.js";

function makeResponse(phase: string, mark = 0): TickResponse {
	const frame = {
		width: 4,
		height: 3,
		chars: new Uint8Array(12),
		attrs: new Uint8Array(12),
	};
	frame.chars[0] = mark;
	return { frame, status: { score: 0, lives: 3, phase } };
}

class FakeTerminal implements TerminalIO {
	columns = 80;
	rows = 30;
	written: string[] = [];
	restoreCalls = 0;
	entered = 0;
	handler: ((chunk: Buffer | string) => void) | null = null;

	enterGame(): void {
		this.entered++;
	}
	write(data: string): void {
		this.written.push(data);
	}
	restore(): void {
		this.restoreCalls++;
	}
	onInput(handler: (chunk: Buffer | string) => void): void {
		this.handler = handler;
	}
	offInput(): void {
		this.handler = null;
	}
	press(keys: string): void {
		this.handler?.(keys);
	}
}

class ScriptedEngine implements EngineClient {
	lines: string[] = [];
	stopped = false;

	constructor(private responses: (line: string) => TickResponse) {}

	async start(): Promise<TickResponse> {
		return makeResponse("welcome");
	}
	async tick(line: string): Promise<TickResponse> {
		this.lines.push(line);
		return this.responses(line);
	}
	async stop(): Promise<void> {
		this.stopped = true;
	}
}

const FAST = { tickMs: 1, monochrome: true };

/** wait until the session has registered its input handler */
async function inputReady(terminal: FakeTerminal): Promise<void> {
	while (!terminal.handler) {
		await new Promise((resolve) => setTimeout(resolve, 1));
	}
}

describe("Session", () => {
	it("exits within one tick of ESC and restores the terminal", async () => {
		const terminal = new FakeTerminal();
		const engine = new ScriptedEngine((line) =>
			makeResponse(line.includes("ESC") ? "quit" : "playing"),
		);
		const session = new Session(terminal, engine, FAST);
		const pending = session.run();
		await inputReady(terminal);
		terminal.press("\x1b");
		const result = await pending;
		expect(result.finalStatus.phase).toBe("quit");
		// the tick right after the keypress carries ESC and is the last one
		expect(engine.lines[engine.lines.length - 1]).toBe("ESC");
		expect(engine.lines.filter((l) => l !== "")).toEqual(["ESC"]);
		expect(result.ticks).toBe(engine.lines.length);
		expect(terminal.restoreCalls).toBe(1);
		expect(engine.stopped).toBe(true);
	});

	it("repaints nothing when consecutive frames are identical", async () => {
		const terminal = new FakeTerminal();
		const engine = new ScriptedEngine(() => makeResponse("welcome"));
		const session = new Session(terminal, engine, { ...FAST, maxTicks: 5 });
		const result = await session.run();
		// first paint covers the whole 4x3 frame; nothing after that
		expect(result.cellsRepainted).toBe(12);
		expect(terminal.written).toHaveLength(1);
	});

	it("records one script line per tick, empty when idle", async () => {
		const terminal = new FakeTerminal();
		const engine = new ScriptedEngine(() => makeResponse("playing"));
		const session = new Session(terminal, engine, { ...FAST, maxTicks: 3 });
		const pending = session.run();
		await inputReady(terminal);
		terminal.press("x");
		const result = await pending;
		expect(result.scriptLines).toHaveLength(3);
		expect(result.scriptLines).toContain("KEY");
		expect(result.scriptLines.filter((l) => l === "")).toHaveLength(2);
	});

	it("batches keys pressed between ticks into one line", async () => {
		const terminal = new FakeTerminal();
		const engine = new ScriptedEngine(() => makeResponse("playing"));
		const session = new Session(terminal, engine, { ...FAST, maxTicks: 1 });
		const pending = session.run();
		await inputReady(terminal);
		terminal.press("a");
		terminal.press("\x1b[C");
		const result = await pending;
		expect(result.scriptLines).toEqual(["LEFT,RIGHT"]);
	});

	it("refuses a terminal smaller than the engine console", async () => {
		const terminal = new FakeTerminal();
		terminal.rows = 10;
		const engine = new ScriptedEngine(() => makeResponse("welcome"));
		const session = new Session(
			terminal,
			{
				...engine,
				start: async () => {
					const r = makeResponse("welcome");
					r.frame.height = 30;
					r.frame.width = 80;
					return r;
				},
				stop: async () => {},
			} as EngineClient,
			FAST,
		);
		await expect(session.run()).rejects.toThrow(/need at least 80x30/);
		expect(terminal.restoreCalls).toBe(1);
	});

	it("restores the terminal when the engine dies mid-session", async () => {
		const terminal = new FakeTerminal();
		const engine = new ScriptedEngine(() => {
			throw new Error("engine exited with code 1");
		});
		const session = new Session(terminal, engine, FAST);
		await expect(session.run()).rejects.toThrow(/engine exited/);
		expect(terminal.restoreCalls).toBe(1);
	});
});
