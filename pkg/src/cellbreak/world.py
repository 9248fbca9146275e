"""Game entities and the cell-grid physics core.

The ball walks the grid diagonally, one cell in x and one in y per move.
Collision detection looks at the three cells a diagonal step could enter
and reports which face of the struck object the ball crossed; rebounds
are specular, so the entry angle is always preserved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

from .screen import Coord, Rect


class LayoutError(ValueError):
    """Play area too small for the requested block matrix and pad."""


class CorruptBallError(ValueError):
    """Ball position pair does not describe a diagonal unit step."""


class InvalidSidesError(ValueError):
    """Rebound asked for an empty or contradictory side set."""


class InvalidHitError(ValueError):
    """A hit was registered against an inactive block."""


class HitSide(enum.Enum):
    """Face of the struck object that the ball crossed."""

    TOP = "top"
    BOTTOM = "bottom"
    LEFT = "left"
    RIGHT = "right"


class Direction(NamedTuple):
    """Diagonal unit motion vector; both components are -1 or +1."""

    dx: int
    dy: int


class TargetKind(enum.Enum):
    EMPTY = "empty"
    WALL_LEFT = "wall_left"
    WALL_RIGHT = "wall_right"
    WALL_TOP = "wall_top"
    FLOOR = "floor"
    PAD = "pad"
    BLOCK = "block"


class Target(NamedTuple):
    """What occupies a cell; `block` is the block index for BLOCK targets."""

    kind: TargetKind
    block: int | None = None


@dataclass(frozen=True)
class CollisionReport:
    """Outcome of probing one diagonal step.

    `targets` lists every struck object (walls, pad, block indices,
    deduplicated, detection order). A floor target means the ball left
    the bottom of the play area; its sides carry no rebound meaning.
    """

    targets: tuple[Target, ...]
    sides: frozenset[HitSide]

    @classmethod
    def no_hit(cls) -> "CollisionReport":
        return cls(targets=(), sides=frozenset())

    @property
    def hit(self) -> bool:
        return bool(self.targets)

    @property
    def is_floor(self) -> bool:
        return any(t.kind is TargetKind.FLOOR for t in self.targets)

    def block_indices(self) -> list[int]:
        return [t.block for t in self.targets if t.kind is TargetKind.BLOCK and t.block is not None]


class HitOutcome(enum.Enum):
    COLOR_CHANGED = "color_changed"
    DESTROYED = "destroyed"
    FALLS = "falls"


@dataclass
class BlockCell:
    """One destructible block; `area` is its inclusive cell rectangle."""

    area: Rect
    color: int
    value: int
    hit_count: int
    active: bool = True
    first_row: bool = False


@dataclass
class Pad:
    """Player pad: a single-row rectangle moved in steps of `step` cells."""

    area: Rect
    step: int


@dataclass
class Ball:
    """Two-position motion state; direction is implied by cur - prev."""

    cur: Coord
    prev: Coord
    active: bool = False


@dataclass
class FallingBlock:
    """A twice-hit first-row block descending toward the pad."""

    left: int
    right: int
    row: int
    value: int


@dataclass
class PlayArea:
    """The game part of the console; the pad lives on the bottom row."""

    bounds: Rect

    @property
    def pad_row(self) -> int:
        return self.bounds.bottom


@dataclass
class World:
    """Everything the physics acts on."""

    area: PlayArea
    blocks: list[BlockCell]
    pad: Pad
    ball: Ball
    falling: list[FallingBlock] = field(default_factory=list)


def standard_layout(config) -> World:
    """Lay out the default block matrix, centered pad and inactive ball.

    Blocks tile full rows starting one row below the top of the play
    area; the top block row takes two hits and falls when destroyed.
    """
    bounds = Rect(0, config.info_bar_height, config.width - 1, config.height - 1)
    area = PlayArea(bounds=bounds)
    area_w = bounds.width

    if config.pad_width > area_w:
        raise LayoutError(f"pad width {config.pad_width} exceeds play area width {area_w}")

    blocks: list[BlockCell] = []
    if config.block_rows > 0:
        block_w = area_w // config.blocks_per_row
        if block_w < 1:
            raise LayoutError(f"cannot fit {config.blocks_per_row} blocks in width {area_w}")
        top = bounds.top + 1
        bottom = top + config.block_rows * config.block_row_height - 1
        # Keep the serve row (one above the pad) and a flight row clear.
        if bottom > area.pad_row - 3:
            raise LayoutError("block matrix leaves no room for pad and ball")
        for row in range(config.block_rows):
            y0 = top + row * config.block_row_height
            color = config.row_colors[row % len(config.row_colors)]
            value = config.row_values[row % len(config.row_values)]
            first = row == 0
            for col in range(config.blocks_per_row):
                x0 = bounds.left + col * block_w
                blocks.append(
                    BlockCell(
                        area=Rect(x0, y0, x0 + block_w - 1, y0 + config.block_row_height - 1),
                        color=color,
                        value=value,
                        hit_count=2 if first else 1,
                        first_row=first,
                    )
                )

    pad_left = bounds.left + (area_w - config.pad_width) // 2
    pad = Pad(
        area=Rect(pad_left, area.pad_row, pad_left + config.pad_width - 1, area.pad_row),
        step=config.pad_step,
    )
    ball = Ball(cur=Coord(pad_left, area.pad_row - 1), prev=Coord(pad_left, area.pad_row - 1))
    return World(area=area, blocks=blocks, pad=pad, ball=ball)


def occupant(world: World, at: Coord) -> Target:
    """Classify a cell: wall/floor outside the bounds, pad, block or empty.

    Corner cells outside two bounds classify floor first, then top wall,
    then the side walls.
    """
    bounds = world.area.bounds
    if at.y > bounds.bottom:
        return Target(TargetKind.FLOOR)
    if at.y < bounds.top:
        return Target(TargetKind.WALL_TOP)
    if at.x < bounds.left:
        return Target(TargetKind.WALL_LEFT)
    if at.x > bounds.right:
        return Target(TargetKind.WALL_RIGHT)
    if world.pad.area.contains(at):
        return Target(TargetKind.PAD)
    for i, block in enumerate(world.blocks):
        if block.active and block.area.contains(at):
            return Target(TargetKind.BLOCK, i)
    return Target(TargetKind.EMPTY)


def ball_direction(ball: Ball) -> Direction:
    """Motion vector implied by the current and previous ball position."""
    dx = ball.cur.x - ball.prev.x
    dy = ball.cur.y - ball.prev.y
    if abs(dx) != 1 or abs(dy) != 1:
        raise CorruptBallError(f"ball positions {ball.prev} -> {ball.cur} are not a diagonal step")
    return Direction(dx, dy)


def find_collision(world: World, cur: Coord, direction: Direction) -> CollisionReport:
    """Probe the three cells a diagonal step from `cur` could enter.

    The vertically-adjacent cell reports a horizontal face (top when
    moving down, bottom when moving up), the horizontally-adjacent cell a
    vertical face; both may hit at once. Only when both are free does the
    diagonal cell count, reporting a corner (both faces). Stepping below
    the play area is a floor hit, which ends the ball instead of
    rebounding it.
    """
    dx, dy = direction
    v_cell = Coord(cur.x, cur.y + dy)
    h_cell = Coord(cur.x + dx, cur.y)
    d_cell = Coord(cur.x + dx, cur.y + dy)

    v_target = occupant(world, v_cell)
    if v_target.kind is TargetKind.FLOOR:
        return CollisionReport(
            targets=(v_target,),
            sides=frozenset({HitSide.TOP if dy > 0 else HitSide.BOTTOM}),
        )

    h_target = occupant(world, h_cell)
    targets: list[Target] = []
    sides: set[HitSide] = set()
    if v_target.kind is not TargetKind.EMPTY:
        targets.append(v_target)
        sides.add(HitSide.TOP if dy > 0 else HitSide.BOTTOM)
    if h_target.kind is not TargetKind.EMPTY:
        if h_target not in targets:
            targets.append(h_target)
        sides.add(HitSide.LEFT if dx > 0 else HitSide.RIGHT)

    if not targets:
        d_target = occupant(world, d_cell)
        if d_target.kind is TargetKind.FLOOR:
            return CollisionReport(
                targets=(d_target,),
                sides=frozenset({HitSide.TOP if dy > 0 else HitSide.BOTTOM}),
            )
        if d_target.kind is not TargetKind.EMPTY:
            targets.append(d_target)
            sides.add(HitSide.TOP if dy > 0 else HitSide.BOTTOM)
            sides.add(HitSide.LEFT if dx > 0 else HitSide.RIGHT)

    if not targets:
        return CollisionReport.no_hit()
    return CollisionReport(targets=tuple(targets), sides=frozenset(sides))


def rebound(direction: Direction, sides: frozenset[HitSide] | set[HitSide]) -> Direction:
    """Specular reflection: each reported face forces the matching component."""
    if not sides:
        raise InvalidSidesError("rebound needs at least one side")
    if {HitSide.TOP, HitSide.BOTTOM} <= set(sides) or {HitSide.LEFT, HitSide.RIGHT} <= set(sides):
        raise InvalidSidesError(f"contradictory side set: {sides}")
    dx, dy = direction
    if HitSide.TOP in sides:
        dy = -1
    if HitSide.BOTTOM in sides:
        dy = 1
    if HitSide.LEFT in sides:
        dx = -1
    if HitSide.RIGHT in sides:
        dx = 1
    return Direction(dx, dy)


def register_hit(block: BlockCell, config) -> HitOutcome:
    """Decrement the block's hit count and classify what happens to it.

    First-row blocks crack (color change) on their first hit and fall on
    the second; everything else is destroyed when the count reaches zero.
    """
    if not block.active:
        raise InvalidHitError("hit registered on an inactive block")
    block.hit_count -= 1
    if block.hit_count <= 0:
        block.active = False
        return HitOutcome.FALLS if block.first_row else HitOutcome.DESTROYED
    if block.first_row:
        block.color = config.cracked_color
        return HitOutcome.COLOR_CHANGED
    return HitOutcome.COLOR_CHANGED


def apply_block_hit(world: World, index: int, config) -> HitOutcome:
    """Register a hit on a block by index, spawning a faller when it falls."""
    block = world.blocks[index]
    outcome = register_hit(block, config)
    if outcome is HitOutcome.FALLS:
        world.falling.append(
            FallingBlock(
                left=block.area.left,
                right=block.area.right,
                row=block.area.bottom,
                value=block.value,
            )
        )
    return outcome


def move_pad(world: World, direction: int) -> World:
    """Translate the pad by one step, clamped to the play area."""
    bounds = world.area.bounds
    pad = world.pad
    width = pad.area.width
    left = pad.area.left + direction * pad.step
    left = max(bounds.left, min(left, bounds.right - width + 1))
    pad.area = Rect(left, pad.area.top, left + width - 1, pad.area.bottom)
    return world


@dataclass
class FallResult:
    """One falling-gate advance: caught blocks score double their value."""

    points: int
    caught: list[FallingBlock]
    missed: list[FallingBlock]


def step_falling(world: World) -> FallResult:
    """Advance every falling block one row; settle those reaching the pad row."""
    result = FallResult(points=0, caught=[], missed=[])
    still: list[FallingBlock] = []
    pad = world.pad.area
    for fb in world.falling:
        fb.row += 1
        if fb.row >= world.area.pad_row:
            if fb.left <= pad.right and fb.right >= pad.left:
                result.caught.append(fb)
                result.points += 2 * fb.value
            else:
                result.missed.append(fb)
        else:
            still.append(fb)
    world.falling = still
    return result


def serve(world: World, r: float, direction: Direction) -> World:
    """Place the ball on a random pad column and launch it at the fixed angle."""
    pad = world.pad.area
    x = pad.left + int(r * pad.width)
    x = max(pad.left, min(x, pad.right))
    cur = Coord(x, world.area.pad_row - 1)
    world.ball = Ball(cur=cur, prev=Coord(cur.x - direction.dx, cur.y - direction.dy), active=True)
    return world


@dataclass
class BallStepResult:
    """What one ball movement tick did."""

    floor: bool = False
    moved: bool = False
    block_hits: list[tuple[int, HitOutcome]] = field(default_factory=list)


def advance_ball(world: World, config) -> BallStepResult:
    """One movement tick: detect, register hits, rebound, then step.

    After a rebound the ball re-steps along the new direction within the
    same tick; if that is blocked too (tight corner) it keeps the new
    direction but stays in place. A floor hit on either check ends the
    ball without moving it.
    """
    result = BallStepResult()
    ball = world.ball
    direction = ball_direction(ball)
    report = find_collision(world, ball.cur, direction)

    if report.is_floor:
        result.floor = True
        return result

    if report.hit:
        for index in report.block_indices():
            result.block_hits.append((index, apply_block_hit(world, index, config)))
        direction = rebound(direction, report.sides)
        recheck = find_collision(world, ball.cur, direction)
        if recheck.is_floor:
            result.floor = True
            return result
        if recheck.hit:
            # Tight corner: hold position, keep the reflected direction.
            ball.prev = Coord(ball.cur.x - direction.dx, ball.cur.y - direction.dy)
            return result

    ball.prev = ball.cur
    ball.cur = Coord(ball.cur.x + direction.dx, ball.cur.y + direction.dy)
    result.moved = True
    return result
