/**
 * CLI entry: option parsing, TTY checks, engine spawn, session run, and
 * optional session recording in the engine's replay script format.
 */

import { mkdtempSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { ChildEngine } from "./engine.js";
import { Session } from "./session.js";
import { TtyTerminal } from "./terminal.js";

interface CliOptions {
	tickMs: number;
	seed: number;
	record?: string;
	engineCommand: string[];
	config: Record<string, number>;
}

const CONFIG_FLAGS: Record<string, string> = {
	"--width": "width",
	"--height": "height",
	"--pad-width": "pad_width",
	"--pad-step": "pad_step",
	"--lives": "lives",
	"--tv-pad": "tv_pad",
	"--tv-ball": "tv_ball",
	"--tv-fall": "tv_fall",
};

const USAGE = `usage: cellbreak-tui [options]

options:
  --tick-ms <n>     milliseconds per master tick (default 40)
  --seed <u64>      generator seed (default: wall clock)
  --record <path>   write the session as a replay script
  --engine <cmd>    engine command (default "python3 -m cellbreak")
  --width/--height/--pad-width/--pad-step/--lives/--tv-pad/--tv-ball/--tv-fall <n>
                    engine config overrides

keys: left/right arrows or a/d move the pad, any other key starts, ESC quits.
NO_COLOR in the environment selects monochrome output.
`;

export function parseArgs(argv: string[]): CliOptions {
	const options: CliOptions = {
		tickMs: 40,
		seed: Date.now() >>> 0,
		engineCommand: ["python3", "-m", "cellbreak"],
		config: {},
	};
	for (let i = 0; i < argv.length; i++) {
		const flag = argv[i];
		const needValue = () => {
			const value = argv[++i];
			if (value === undefined) {
				throw new Error(`${flag} needs a value`);
			}
			return value;
		};
		if (flag === "--help" || flag === "-h") {
			process.stdout.write(USAGE);
			process.exit(0);
		} else if (flag === "--tick-ms") {
			options.tickMs = parsePositive(flag, needValue());
		} else if (flag === "--seed") {
			options.seed = parseNonNegative(flag, needValue());
		} else if (flag === "--record") {
			options.record = needValue();
		} else if (flag === "--engine") {
			options.engineCommand = needValue().split(" ").filter(Boolean);
		} else if (flag in CONFIG_FLAGS) {
			options.config[CONFIG_FLAGS[flag]] = parsePositive(flag, needValue());
		} else {
			throw new Error(`unknown option ${flag}`);
		}
	}
	return options;
}

function parsePositive(flag: string, raw: string): number {
	const value = Number(raw);
	if (!Number.isInteger(value) || value < 1) {
		throw new Error(`${flag} wants a positive integer, got ${raw}`);
	}
	return value;
}

function parseNonNegative(flag: string, raw: string): number {
	const value = Number(raw);
	if (!Number.isSafeInteger(value) || value < 0) {
		throw new Error(`${flag} wants a non-negative integer, got ${raw}`);
	}
	return value;
}

async function main(): Promise<number> {
	let options: CliOptions;
	try {
		options = parseArgs(process.argv.slice(2));
	} catch (err) {
		process.stderr.write(`error: ${(err as Error).message}\n${USAGE}`);
		return 2;
	}

	try {
		TtyTerminal.checkInteractive();
	} catch (err) {
		process.stderr.write(`error: ${(err as Error).message}\n`);
		return 2;
	}

	let configPath: string | undefined;
	let configDir: string | undefined;
	if (Object.keys(options.config).length > 0) {
		configDir = mkdtempSync(join(tmpdir(), "cellbreak-tui-"));
		configPath = join(configDir, "config.json");
		writeFileSync(configPath, JSON.stringify(options.config));
	}

	const terminal = new TtyTerminal();
	const engine = new ChildEngine({
		command: options.engineCommand,
		seed: options.seed,
		configPath,
	});
	const session = new Session(terminal, engine, {
		tickMs: options.tickMs,
		monochrome: "NO_COLOR" in process.env && process.env.NO_COLOR !== "",
	});

	try {
		const result = await session.run();
		if (options.record) {
			writeFileSync(options.record, result.scriptLines.map((l) => l + "\n").join(""));
		}
		process.stdout.write(
			`score=${result.finalStatus.score} lives=${result.finalStatus.lives} ` +
				`phase=${result.finalStatus.phase} seed=${options.seed}\n`,
		);
		return 0;
	} catch (err) {
		process.stderr.write(`error: ${(err as Error).message}\n`);
		return 1;
	} finally {
		if (configDir) {
			rmSync(configDir, { recursive: true, force: true });
		}
	}
}

main().then((code) => {
	process.exitCode = code;
});
