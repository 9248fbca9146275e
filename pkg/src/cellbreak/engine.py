"""Main game state machine: input, tick scheduling, scoring and frames.

A master tick counter gates each subsystem through an integer period
("time vector"): a subsystem runs only on ticks its period divides, which
is how the pad, ball and falling blocks move at different speeds. All
randomness comes from one seeded 64-bit linear-congruential generator, so
a (config, seed, script) triple replays to identical frames everywhere.
"""

from __future__ import annotations

import copy
import enum
from dataclasses import dataclass, field, replace

from . import bigfont, fonts, world as worldmod
from .bigfont import GlyphStyle, GlyphTable
from .screen import Coord, Rect, ScreenBuffer, ScreenCell, dump_bytes, fill_rect, make_attrs, new_buffer
from .world import Direction, HitOutcome, World

LOGO_GLYPH_ID = 256

# Fixed 64-bit LCG so replays reproduce across implementations.
_LCG_MULT = 6364136223846793005
_LCG_INC = 1442695040888963407
_MASK64 = (1 << 64) - 1

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211

TITLE_TEXT = "CELLBREAK"
HINT_TEXT = "PRESS ANY KEY"
WIN_TEXT = "YOU WIN"
LOSS_TEXT = "GAME OVER"


class ConfigError(ValueError):
    """Game configuration violates an invariant."""


class PhaseError(RuntimeError):
    """Operation called in a phase that does not allow it."""


class KeyEvent(enum.Enum):
    LEFT = "LEFT"
    RIGHT = "RIGHT"
    ESC = "ESC"
    OTHER = "KEY"


class GamePhase(enum.Enum):
    WELCOME = "welcome"
    PLAYING = "playing"
    GAME_OVER = "game_over"
    QUIT = "quit"

    @property
    def terminal(self) -> bool:
        return self in (GamePhase.GAME_OVER, GamePhase.QUIT)


@dataclass(frozen=True)
class GameConfig:
    """All tunables; defaults give the classic 80x30 console layout."""

    width: int = 80
    height: int = 30
    info_bar_height: int = 7
    block_rows: int = 4
    blocks_per_row: int = 10
    block_row_height: int = 2
    pad_width: int = 8
    pad_step: int = 2
    lives: int = 3
    tv_pad: int = 1
    tv_ball: int = 2
    tv_fall: int = 3
    serve_direction: tuple[int, int] = (1, -1)
    row_colors: tuple[int, ...] = (12, 14, 10, 9)  # red, yellow, green, blue
    row_values: tuple[int, ...] = (8, 6, 4, 2)
    cracked_color: int = 8
    glyph_size: str = "3x5"

    def validate(self) -> None:
        for name in ("tv_pad", "tv_ball", "tv_fall"):
            tv = getattr(self, name)
            if not 1 <= tv <= 65535:
                raise ConfigError(f"{name} must be in 1..65535, got {tv}")
        if self.tv_fall <= self.tv_pad:
            raise ConfigError("falling blocks must be slower than the pad (tv_fall > tv_pad)")
        if self.width < 1 or self.height < 1:
            raise ConfigError("console dimensions must be positive")
        if not 0 <= self.info_bar_height < self.height:
            raise ConfigError("info bar must leave room for the play area")
        if self.lives < 1:
            raise ConfigError("at least one life required")
        if self.pad_width < 1 or self.pad_step < 1:
            raise ConfigError("pad width and step must be positive")
        if self.block_rows < 0 or self.blocks_per_row < 1 or self.block_row_height < 1:
            raise ConfigError("bad block matrix shape")
        if not all(0 <= c <= 15 for c in self.row_colors) or not 0 <= self.cracked_color <= 15:
            raise ConfigError("colors must be palette indices 0..15")
        if any(v < 0 for v in self.row_values):
            raise ConfigError("block values must be non-negative")
        if tuple(sorted((abs(self.serve_direction[0]), abs(self.serve_direction[1])))) != (1, 1):
            raise ConfigError("serve direction must be diagonal (+-1, +-1)")


@dataclass
class Lcg:
    """64-bit linear-congruential generator; unit draws use the top 53 bits."""

    state: int

    def next_unit(self) -> float:
        self.state = (self.state * _LCG_MULT + _LCG_INC) & _MASK64
        return (self.state >> 11) / float(1 << 53)


@dataclass
class GameState:
    """Complete replayable simulation state."""

    config: GameConfig
    phase: GamePhase
    world: World
    rng: Lcg
    score: int = 0
    lives_left: int = 0
    tick_counter: int = 0
    pending_move: int | None = None
    total_blocks: int = 0
    won: bool = False
    pad_gate_fired: int = 0
    ball_gate_fired: int = 0
    fall_gate_fired: int = 0
    events: list[tuple] = field(default_factory=list)

    def clone(self) -> "GameState":
        return copy.deepcopy(self)


def new_game(config: GameConfig, seed: int) -> GameState:
    """Fresh state on the welcome screen, world laid out, nothing served."""
    config.validate()
    try:
        w = worldmod.standard_layout(config)
    except worldmod.LayoutError as exc:
        raise ConfigError(str(exc)) from exc
    return GameState(
        config=config,
        phase=GamePhase.WELCOME,
        world=w,
        rng=Lcg(state=seed & _MASK64),
        lives_left=config.lives,
        total_blocks=len(w.blocks),
    )


def next_random_unit(state: GameState) -> float:
    """Advance the deterministic generator and return a draw in [0, 1)."""
    return state.rng.next_unit()


def tick_gate(counter: int, period: int) -> bool:
    """True on the ticks a subsystem with this time vector actually runs."""
    if counter < 1:
        raise ValueError("tick counter starts at 1")
    if period < 1:
        raise ValueError("time vector period must be >= 1")
    return counter % period == 0


def _serve_ball(state: GameState) -> None:
    r = next_random_unit(state)
    worldmod.serve(state.world, r, Direction(*state.config.serve_direction))
    state.events.append(("serve", state.world.ball.cur.x))


def handle_key(state: GameState, key: KeyEvent) -> GameState:
    """Route one key: ESC cancels, any key starts, arrows queue pad moves."""
    if state.phase.terminal:
        return state
    if key is KeyEvent.ESC:
        state.phase = GamePhase.QUIT
        return state
    if state.phase is GamePhase.WELCOME:
        state.phase = GamePhase.PLAYING
        _serve_ball(state)
        return state
    if state.phase is GamePhase.PLAYING:
        if key is KeyEvent.LEFT:
            state.pending_move = -1
        elif key is KeyEvent.RIGHT:
            state.pending_move = 1
    return state


def step(state: GameState) -> GameState:
    """Advance one master tick: pad gate, ball gate, fall gate, win check."""
    if state.phase is not GamePhase.PLAYING:
        raise PhaseError(f"step called in phase {state.phase.value}")
    config = state.config
    state.events = []
    state.tick_counter += 1

    if tick_gate(state.tick_counter, config.tv_pad):
        state.pad_gate_fired += 1
        if state.pending_move is not None:
            worldmod.move_pad(state.world, state.pending_move)
            state.events.append(("pad", state.pending_move))
            state.pending_move = None

    if tick_gate(state.tick_counter, config.tv_ball):
        state.ball_gate_fired += 1
        if state.world.ball.active:
            result = worldmod.advance_ball(state.world, config)
            for index, outcome in result.block_hits:
                block = state.world.blocks[index]
                if outcome is HitOutcome.DESTROYED:
                    state.score += block.value
                    state.events.append(("destroyed", index, block.value))
                elif outcome is HitOutcome.FALLS:
                    state.events.append(("fell", index, block.value))
                else:
                    state.events.append(("cracked", index))
            if result.floor:
                state.lives_left -= 1
                state.events.append(("life_lost", state.lives_left))
                if state.lives_left > 0:
                    _recenter_pad(state.world)
                    _serve_ball(state)
                else:
                    state.world.ball.active = False
                    state.phase = GamePhase.GAME_OVER

    if tick_gate(state.tick_counter, config.tv_fall):
        state.fall_gate_fired += 1
        fall = worldmod.step_falling(state.world)
        state.score += fall.points
        for fb in fall.caught:
            state.events.append(("caught", fb.value))
        for fb in fall.missed:
            state.events.append(("missed", fb.value))

    if (
        state.phase is GamePhase.PLAYING
        and state.total_blocks > 0
        and not any(b.active for b in state.world.blocks)
        and not state.world.falling
    ):
        state.won = True
        state.world.ball.active = False
        state.phase = GamePhase.GAME_OVER
        state.events.append(("won",))

    return state


def _recenter_pad(w: World) -> None:
    bounds = w.area.bounds
    width = w.pad.area.width
    left = bounds.left + (bounds.width - width) // 2
    w.pad.area = Rect(left, w.area.pad_row, left + width - 1, w.area.pad_row)


_table_cache: dict[str, GlyphTable] = {}


def _display_table(size_label: str) -> GlyphTable:
    table = _table_cache.get(size_label)
    if table is None:
        table = bigfont.builtin_table(size_label)
        bigfont.register_glyph(table, LOGO_GLYPH_ID, bigfont.Glyph.from_rows(fonts.LOGO_ROWS))
        _table_cache[size_label] = table
    return table


def _centered_x(width: int, text_width: int) -> int:
    return max(0, (width - text_width) // 2)


def render_frame(state: GameState) -> ScreenBuffer:
    """Pure view of the state: welcome screen, or info bar plus playfield."""
    config = state.config
    buf = new_buffer(config.width, config.height, ScreenCell(0, 0))
    table = _display_table(config.glyph_size)
    style = GlyphStyle()

    if state.phase is GamePhase.WELCOME:
        title_w, title_h = bigfont.measure(table, TITLE_TEXT)
        y = max(0, config.height // 7)
        buf = bigfont.render_big_string(
            buf, table, TITLE_TEXT, Coord(_centered_x(config.width, title_w), y), style
        )
        logo = bigfont.glyph_for(table, LOGO_GLYPH_ID)
        logo_y = y + title_h + 2
        buf = bigfont.render_glyph(
            buf, table, LOGO_GLYPH_ID, Coord(_centered_x(config.width, logo.width), logo_y), style
        )
        hint_w, hint_h = bigfont.measure(table, HINT_TEXT)
        hint_y = min(config.height - hint_h, logo_y + logo.height + 1)
        if hint_y >= logo_y + logo.height:
            buf = bigfont.render_big_string(
                buf, table, HINT_TEXT, Coord(_centered_x(config.width, hint_w), hint_y), style
            )
        return buf

    # Info part: gray band with score and lives.
    if config.info_bar_height > 0:
        band = Rect(0, 0, config.width - 1, config.info_bar_height - 1)
        buf = fill_rect(buf, band, ScreenCell(0, make_attrs(0, bigfont.DEFAULT_BACKGROUND)))
        text_y = max(0, (config.info_bar_height - table.nominal_height) // 2)
        buf = bigfont.render_big_string(buf, table, f"SCORE {state.score}", Coord(1, text_y), style)
        lives_text = f"LIVES {state.lives_left}"
        lives_w, _ = bigfont.measure(table, lives_text)
        buf = bigfont.render_big_string(
            buf, table, lives_text, Coord(config.width - 1 - lives_w, text_y), style
        )

    # Game part: blocks, falling blocks, pad, ball.
    w = state.world
    for block in w.blocks:
        if block.active:
            buf = fill_rect(buf, block.area, ScreenCell(bigfont.FILL_CHAR, make_attrs(block.color, 0)))
    for fb in w.falling:
        buf = fill_rect(
            buf,
            Rect(fb.left, fb.row, fb.right, fb.row),
            ScreenCell(bigfont.FILL_CHAR, make_attrs(config.cracked_color, 0)),
        )
    buf = fill_rect(buf, w.pad.area, ScreenCell(bigfont.FILL_CHAR, make_attrs(7, 0)))
    if w.ball.active:
        buf = fill_rect(
            buf,
            Rect(w.ball.cur.x, w.ball.cur.y, w.ball.cur.x, w.ball.cur.y),
            ScreenCell(bigfont.FILL_CHAR, make_attrs(15, 0)),
        )

    if state.phase is GamePhase.GAME_OVER:
        text = WIN_TEXT if state.won else LOSS_TEXT
        text_w, text_h = bigfont.measure(table, text)
        bounds = w.area.bounds
        y = bounds.top + max(0, (bounds.height - text_h) // 2)
        buf = bigfont.render_big_string(buf, table, text, Coord(_centered_x(config.width, text_w), y), style)
    return buf


def fnv1a64(data: bytes) -> int:
    """64-bit FNV-1a; the stable frame-dump digest."""
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & _MASK64
    return h


def frame_hash(buf: ScreenBuffer) -> int:
    return fnv1a64(dump_bytes(buf))


# One inner list of key events per master tick.
ReplayScript = list[list[KeyEvent]]

_TOKEN_TO_KEY = {e.value: e for e in KeyEvent}


def parse_script(text: str) -> ReplayScript:
    """Parse the replay script format: one comma-separated line per tick."""
    script: ReplayScript = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.rstrip("\r")
        if not line:
            script.append([])
            continue
        events = []
        for token in line.split(","):
            key = _TOKEN_TO_KEY.get(token)
            if key is None:
                raise ValueError(f"line {lineno}: unknown event token {token!r}")
            events.append(key)
        script.append(events)
    return script


def format_script(script: ReplayScript) -> str:
    """Inverse of `parse_script`."""
    return "".join(",".join(e.value for e in events) + "\n" for events in script)


@dataclass
class ReplayResult:
    state: GameState
    frame_hash: int


def run_replay(config: GameConfig, seed: int, script: ReplayScript) -> ReplayResult:
    """Drive a fresh game through a script, rendering every tick's frame."""
    state = new_game(config, seed)
    for events in script:
        for event in events:
            handle_key(state, event)
        if state.phase is GamePhase.PLAYING:
            step(state)
        render_frame(state)
    return ReplayResult(state=state, frame_hash=frame_hash(render_frame(state)))


def config_from_dict(overrides: dict) -> GameConfig:
    """Build a config from a JSON-style dict of field overrides."""
    base = GameConfig()
    unknown = set(overrides) - set(base.__dataclass_fields__)
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    coerced = {}
    for key, value in overrides.items():
        if isinstance(value, list):
            value = tuple(value)
        coerced[key] = value
    config = replace(base, **coerced)
    config.validate()
    return config
