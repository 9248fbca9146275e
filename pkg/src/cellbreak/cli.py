"""Headless command line: replay scripts to a result, or serve a frontend.

Replay mode runs a script file against a seeded game and prints the
result as `key=value` lines. Serve mode speaks the same formats over
stdio, one script line in per tick, one frame dump plus status lines out,
so an interactive frontend can drive the engine without containing any
game rules.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    ConfigError,
    GameConfig,
    GamePhase,
    config_from_dict,
    handle_key,
    new_game,
    parse_script,
    render_frame,
    run_replay,
    step,
)
from .screen import dump


def _load_config(path: str | None) -> GameConfig:
    if path is None:
        return GameConfig()
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a JSON object")
    return config_from_dict(data)


def _result_lines(score: int, lives: int, phase: GamePhase, digest: int | None = None) -> str:
    lines = [f"score={score}", f"lives={lives}", f"phase={phase.value}"]
    if digest is not None:
        lines.append(f"frame_hash={digest:016x}")
    return "\n".join(lines) + "\n"


def _run_serve(config: GameConfig, seed: int, out) -> int:
    """Tick loop on binary stdio; frame dumps go out as latin-1 bytes."""
    state = new_game(config, seed)

    def emit() -> None:
        buf = render_frame(state)
        out.write(dump(buf).encode("latin-1"))
        out.write(_result_lines(state.score, state.lives_left, state.phase).encode("ascii"))
        out.write(b"\n")
        out.flush()

    emit()
    for line in sys.stdin:
        ticks = parse_script(line if line.endswith("\n") else line + "\n")
        for events in ticks:
            for event in events:
                handle_key(state, event)
            if state.phase is GamePhase.PLAYING:
                step(state)
        emit()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="cellbreak", description="Headless deterministic breakout engine."
    )
    parser.add_argument("--config", metavar="FILE", help="JSON file of config overrides")
    parser.add_argument("--seed", type=int, default=0, metavar="U64", help="generator seed")
    parser.add_argument("--script", metavar="FILE", help="replay script, one tick per line")
    parser.add_argument(
        "--dump-final-frame", metavar="FILE", help="write the final frame dump here"
    )
    parser.add_argument(
        "--serve",
        action="store_true",
        help="tick loop on stdio: script lines in, frame dumps and status out",
    )
    args = parser.parse_args(argv)

    try:
        config = _load_config(args.config)
    except (ConfigError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.serve:
        return _run_serve(config, args.seed, sys.stdout.buffer)

    script = []
    if args.script:
        try:
            with open(args.script, "r", encoding="utf-8") as fh:
                script = parse_script(fh.read())
        except (OSError, ValueError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    result = run_replay(config, args.seed, script)
    state = result.state
    if args.dump_final_frame:
        with open(args.dump_final_frame, "w", encoding="latin-1", newline="") as fh:
            fh.write(dump(render_frame(state)))
    sys.stdout.write(
        _result_lines(state.score, state.lives_left, state.phase, result.frame_hash)
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
