/**
 * Client for the engine's serve mode: one script line in per tick, one
 * frame dump plus status block out. The engine child owns every game
 * rule; this side only shuttles lines.
 */

import { spawn, type ChildProcessWithoutNullStreams } from "node:child_process";
import { once } from "node:events";
import { ResponseReader, type TickResponse } from "./dump.js";

export interface EngineClient {
	/** Resolves with the welcome frame emitted on startup. */
	start(): Promise<TickResponse>;
	/** Send one tick's events (comma-joined tokens) and await the frame. */
	tick(line: string): Promise<TickResponse>;
	stop(): Promise<void>;
}

export interface ChildEngineOptions {
	command: string[];
	seed: number;
	configPath?: string;
}

export class ChildEngine implements EngineClient {
	private child: ChildProcessWithoutNullStreams | null = null;
	private reader = new ResponseReader();
	private pending: Array<{
		resolve: (r: TickResponse) => void;
		reject: (err: Error) => void;
	}> = [];
	private stderr = "";

	constructor(private options: ChildEngineOptions) {}

	async start(): Promise<TickResponse> {
		const [cmd, ...baseArgs] = this.options.command;
		const args = [...baseArgs, "--serve", "--seed", String(this.options.seed)];
		if (this.options.configPath) {
			args.push("--config", this.options.configPath);
		}
		this.child = spawn(cmd, args, { stdio: ["pipe", "pipe", "pipe"] });
		this.child.stdout.setEncoding("latin1");
		this.child.stderr.setEncoding("utf8");
		this.child.stderr.on("data", (chunk: string) => {
			this.stderr += chunk;
		});
		this.child.stdout.on("data", (chunk: string) => {
			let responses: TickResponse[];
			try {
				responses = this.reader.feed(chunk);
			} catch (err) {
				this.failAll(err instanceof Error ? err : new Error(String(err)));
				return;
			}
			for (const response of responses) {
				this.pending.shift()?.resolve(response);
			}
		});
		this.child.on("close", (code) => {
			this.failAll(new Error(`engine exited with code ${code}: ${this.stderr.trim()}`));
		});
		this.child.on("error", (err) => {
			this.failAll(new Error(`engine failed to start: ${err.message}`));
		});
		return this.expectResponse();
	}

	tick(line: string): Promise<TickResponse> {
		if (!this.child) {
			return Promise.reject(new Error("engine not started"));
		}
		const promise = this.expectResponse();
		this.child.stdin.write(line + "\n");
		return promise;
	}

	async stop(): Promise<void> {
		if (!this.child) {
			return;
		}
		const child = this.child;
		this.child = null;
		child.stdin.end();
		if (child.exitCode === null) {
			const timeout = setTimeout(() => child.kill(), 2000);
			await once(child, "close");
			clearTimeout(timeout);
		}
	}

	private expectResponse(): Promise<TickResponse> {
		return new Promise((resolve, reject) => {
			this.pending.push({ resolve, reject });
		});
	}

	private failAll(err: Error): void {
		const waiting = this.pending;
		this.pending = [];
		for (const p of waiting) {
			p.reject(err);
		}
	}
}
