import { describe, expect, it } from "vitest";
import { decodeKeys } from "../src/keys.js";

describe("decodeKeys", () => {
	it("maps arrow escape sequences", () => {
		expect(decodeKeys("\x1b[D")).toEqual(["LEFT"]);
		expect(decodeKeys("\x1b[C")).toEqual(["RIGHT"]);
	});

	it("maps wasd-style aliases to the same tokens", () => {
		expect(decodeKeys("a")).toEqual(["LEFT"]);
		expect(decodeKeys("D")).toEqual(["RIGHT"]);
	});

	it("maps a lone escape byte and ctrl-c to ESC", () => {
		expect(decodeKeys("\x1b")).toEqual(["ESC"]);
		expect(decodeKeys("\x03")).toEqual(["ESC"]);
	});

	it("maps other printables to the generic start key", () => {
		expect(decodeKeys(" ")).toEqual(["KEY"]);
		expect(decodeKeys("x")).toEqual(["KEY"]);
	});

	it("decodes several keys from one chunk in order", () => {
		expect(decodeKeys("a\x1b[Cx")).toEqual(["LEFT", "RIGHT", "KEY"]);
	});

	it("skips unknown CSI sequences", () => {
		expect(decodeKeys("\x1b[1;5Aa")).toEqual(["LEFT"]);
	});

	it("ignores stray control bytes", () => {
		expect(decodeKeys("\x00\x7f")).toEqual([]);
	});
});
