#!/usr/bin/env python3
"""Generate the bundled 20 m x 11 m maze world (0.05 m cells).

An 8 x 4 grid of rooms joined by a random spanning tree of doorways plus a few
extra doorways for loops. Walls are 0.2 m thick and axis-aligned, so there are
no diagonal leaks.
"""
import argparse
import random
from pathlib import Path

RES = 0.05
ROWS, COLS = 220, 400
ROOM_ROWS, ROOM_COLS = 4, 8
ROOM_H, ROOM_W = ROWS // ROOM_ROWS, COLS // ROOM_COLS  # 55, 50 cells
WALL = 4  # cells
DOOR = 24  # cells


def build(seed: int, extra_doors: int) -> list[list[str]]:
    g = [["." for _ in range(COLS)] for _ in range(ROWS)]

    def fill(r0, r1, c0, c1, ch="#"):
        for r in range(max(r0, 0), min(r1, ROWS)):
            for c in range(max(c0, 0), min(c1, COLS)):
                g[r][c] = ch

    fill(0, WALL, 0, COLS)
    fill(ROWS - WALL, ROWS, 0, COLS)
    fill(0, ROWS, 0, WALL)
    fill(0, ROWS, COLS - WALL, COLS)
    for k in range(1, ROOM_COLS):
        b = k * ROOM_W
        fill(0, ROWS, b - WALL // 2, b + WALL // 2)
    for k in range(1, ROOM_ROWS):
        b = k * ROOM_H
        fill(b - WALL // 2, b + WALL // 2, 0, COLS)

    rng = random.Random(seed)
    walls = []  # (room a, room b)
    for i in range(ROOM_ROWS):
        for j in range(ROOM_COLS):
            if j + 1 < ROOM_COLS:
                walls.append(((i, j), (i, j + 1)))
            if i + 1 < ROOM_ROWS:
                walls.append(((i, j), (i + 1, j)))

    parent = {(i, j): (i, j) for i in range(ROOM_ROWS) for j in range(ROOM_COLS)}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    rng.shuffle(walls)
    doors, rest = [], []
    for a, b in walls:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            doors.append((a, b))
        else:
            rest.append((a, b))
    doors += rest[:extra_doors]

    for (i, j), (i2, j2) in doors:
        if i == i2:  # vertical wall between columns j and j+1
            b = (j + 1) * ROOM_W
            mid = i * ROOM_H + ROOM_H // 2
            fill(mid - DOOR // 2, mid + DOOR // 2, b - WALL // 2, b + WALL // 2, ".")
        else:  # horizontal wall between rows i and i+1
            b = (i + 1) * ROOM_H
            mid = j * ROOM_W + ROOM_W // 2
            fill(b - WALL // 2, b + WALL // 2, mid - DOOR // 2, mid + DOOR // 2, ".")
    return g


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--extra-doors", type=int, default=8)
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data" / "maze_20x11.map")
    args = ap.parse_args()
    g = build(args.seed, args.extra_doors)
    lines = [f"{ROWS} {COLS} {RES}"] + ["".join(row) for row in g]
    args.out.write_text("\n".join(lines) + "\n")
    free = sum(row.count(".") for row in g)
    print(f"wrote {args.out} free_area={free * RES * RES:.1f} m^2")


if __name__ == "__main__":
    main()
