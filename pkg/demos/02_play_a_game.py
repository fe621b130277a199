"""Compile a game and walk a trial move by move.

Run: python demos/02_play_a_game.py
"""

from ludic import corpus
from ludic.engine import random_playout, replay
from ludic.rules import apply_start, describe_move, legal_moves, successor

game = corpus.load_game("Breakthrough")
print(f"{game.name}: {game.num_sites} sites, representation "
      f"'{game.representation}', move limit {game.move_limit}")

state = apply_start(game)
print(f"\nStart position has {sum(1 for v in range(64) if state.who(v))} pieces; "
      f"P{state.mover} to move with {len(legal_moves(game, state))} moves:")
for move in legal_moves(game, state)[:6]:
    print(f"  {describe_move(game, move)}")
print("  ...")

print("\nThree plies of greedy-first play:")
for _ in range(3):
    move = legal_moves(game, state)[0]
    state = successor(game, state, move)
    print(f"  {describe_move(game, move)}  -> mover P{state.mover}, "
          f"move {state.move_number}")

print("\nA seeded random playout is fully reproducible:")
trial = random_playout(game, seed=7)
print(f"  seed 7: {trial.num_moves} moves, final scores {trial.final.scores}")
again = random_playout(game, seed=7)
assert trial.choices == again.choices and trial.hashes == again.hashes
print("  replayed bit-identically")

assert replay(trial) == trial.hashes[-1]
print("  replaying the recorded moves reproduces the final state hash")
