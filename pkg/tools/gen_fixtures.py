#!/usr/bin/env python3
"""Regenerate the checked-in golden fixtures under tests/golden/.

Finds a seed whose unattended game destroys a block and eventually ends,
freezing three frames (initial, first destruction, game over) plus the
tick indices needed to reproduce them. Also records a pad-controller
session that destroys blocks and catches a falling one, for the score
ledger test. Output is deterministic; rerunning must be a no-op unless
the engine's behavior changed.
"""

from __future__ import annotations

import json
import sys
from pathlib import Path

from cellbreak.engine import (
    GameConfig,
    GamePhase,
    KeyEvent,
    format_script,
    handle_key,
    new_game,
    render_frame,
    step,
)
from cellbreak.screen import dump

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def find_unattended_run(max_seed=200, destroy_limit=6000, end_limit=120_000):
    for seed in range(max_seed):
        state = new_game(GameConfig(), seed)
        handle_key(state, KeyEvent.OTHER)
        destroy_tick = None
        ticks = 0
        while ticks < end_limit and state.phase is GamePhase.PLAYING:
            step(state)
            ticks += 1
            if destroy_tick is None and any(e[0] == "destroyed" for e in state.events):
                destroy_tick = ticks
        if (
            destroy_tick is not None
            and destroy_tick <= destroy_limit
            and state.phase is GamePhase.GAME_OVER
        ):
            return seed, destroy_tick, ticks
    raise SystemExit("no suitable golden seed found")


def render_golden_frames(seed, destroy_tick, game_over_tick):
    state = new_game(GameConfig(), seed)
    handle_key(state, KeyEvent.OTHER)
    frames = {"initial.dump": dump(render_frame(state))}
    for tick in range(1, game_over_tick + 1):
        step(state)
        if tick == destroy_tick:
            frames["after_first_destroy.dump"] = dump(render_frame(state))
    assert state.phase is GamePhase.GAME_OVER
    frames["game_over.dump"] = dump(render_frame(state))
    return frames


def pad_center(state):
    pad = state.world.pad.area
    return (pad.left + pad.right) / 2


def chase_key(state):
    """Steer toward the lowest falling block, else under the ball."""
    if state.world.falling:
        target = max(state.world.falling, key=lambda fb: fb.row)
        goal = (target.left + target.right) / 2
    else:
        goal = state.world.ball.cur.x
    center = pad_center(state)
    if goal < center - 1:
        return KeyEvent.LEFT
    if goal > center + 1:
        return KeyEvent.RIGHT
    return None


def find_ledger_session(max_seed=300, tick_limit=40_000):
    for seed in range(max_seed):
        state = new_game(GameConfig(), seed)
        script = [[KeyEvent.OTHER]]
        handle_key(state, KeyEvent.OTHER)
        destroyed = caught = 0
        for _ in range(tick_limit):
            if state.phase is not GamePhase.PLAYING:
                break
            key = chase_key(state)
            script.append([key] if key else [])
            if key:
                handle_key(state, key)
            step(state)
            destroyed += sum(1 for e in state.events if e[0] == "destroyed")
            caught += sum(1 for e in state.events if e[0] == "caught")
            if destroyed >= 1 and caught >= 1:
                return seed, script, state.score
    raise SystemExit("no suitable ledger seed found")


def main():
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)

    seed, destroy_tick, game_over_tick = find_unattended_run()
    print(f"golden run: seed={seed} destroy_tick={destroy_tick} game_over_tick={game_over_tick}")
    frames = render_golden_frames(seed, destroy_tick, game_over_tick)
    for name, text in frames.items():
        (GOLDEN_DIR / name).write_bytes(text.encode("latin-1"))
        print(f"wrote {name}")

    ledger_seed, script, score = find_ledger_session()
    print(f"ledger run: seed={ledger_seed} ticks={len(script)} score={score}")
    (GOLDEN_DIR / "score_ledger.script").write_text(format_script(script))

    meta = {
        "golden_seed": seed,
        "destroy_tick": destroy_tick,
        "game_over_tick": game_over_tick,
        "ledger_seed": ledger_seed,
    }
    (GOLDEN_DIR / "meta.json").write_text(json.dumps(meta, indent=2) + "\n")
    print("wrote meta.json")
    return 0


if __name__ == "__main__":
    sys.exit(main())
