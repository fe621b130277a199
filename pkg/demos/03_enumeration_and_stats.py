"""Exhaustive enumeration and playout statistics on Tic-Tac-Toe.

Run: python demos/03_enumeration_and_stats.py
"""

import time

from ludic import corpus, fastpath
from ludic.engine import enumerate_game

game = corpus.load_game("Tic-Tac-Toe")

print("Exhaustively enumerating the Tic-Tac-Toe game tree...")
t0 = time.perf_counter()
report = enumerate_game(game)
print(f"  {report.terminal_sequences:,} terminal sequences, "
      f"{report.reachable_positions:,} distinct positions "
      f"({time.perf_counter() - t0:.1f}s)")
for scores, n in sorted(report.outcome_tallies.items(), reverse=True):
    label = {(1.0, -1.0): "P1 wins", (-1.0, 1.0): "P2 wins",
             (0.0, 0.0): "draws  "}[scores]
    print(f"  {label}: {n:,}")

print("\n100,000 seeded uniform playouts through the compiled kernel:")
t0 = time.perf_counter()
played, moves, tallies = fastpath.playout_outcomes(game, 100_000, seed=2026)
dt = time.perf_counter() - t0
print(f"  {played:,} playouts, {moves:,} moves in {dt:.2f}s "
      f"({played / dt:,.0f} playouts/s)")
print(f"  frequencies: P1 {tallies[1] / played:.4f}, P2 {tallies[2] / played:.4f}, "
      f"draw {tallies[0] / played:.4f}")
print("  exact uniform-play odds: P1 0.5849, P2 0.2881, draw 0.1270")
