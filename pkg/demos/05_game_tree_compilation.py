"""Compile an arbitrary finite game tree into a playable game and verify
the equivalence by exhaustive bisimulation.

Run: python demos/05_game_tree_compilation.py
"""

from ludic.rules import apply_start, describe_move, legal_moves, successor
from ludic.universality import (bisimulation_check, compile_tree,
                                corrupt_leaf_payoff, format_tree_file,
                                random_tree)

# a tiny hand-written tree: P1 picks a branch, P2 answers
from ludic.universality import ExtensiveTree
tree = ExtensiveTree(
    2,
    parent=[-1, 0, 0, 1, 1, 2, 2],
    control={0: 1, 1: 2, 2: 2},
    payoff={3: (1.0, -1.0), 4: (-1.0, 1.0), 5: (0.0, 0.0), 6: (1.0, -1.0)},
)
print("The tree as a file:")
print(format_tree_file(tree))

game = compile_tree(tree)
state = apply_start(game)
print(f"Compiled: {game.num_sites} vertices, token starts on the root, "
      f"P{state.mover} in control")
move = legal_moves(game, state)[0]
state = successor(game, state, move)
print(f"After {describe_move(game, move)}: P{state.mover} in control "
      f"(carried by an explicit set-mover action)")

report = bisimulation_check(tree, game, mode="exhaustive")
print(f"\nBisimulation: {report.paths_checked} root-to-leaf paths, "
      f"{len(report.mismatches)} mismatches")

print("\nA corrupted payoff is pinpointed:")
bad = corrupt_leaf_payoff(game, 4)
for mm in bisimulation_check(tree, bad).mismatches:
    print(f"  {mm.kind} at path {'/'.join(mm.path)}: {mm.detail}")

print("\nAnd at scale, 25 random trees (depth <= 6, branching <= 4):")
total = 0
for seed in range(25):
    t = random_tree(seed)
    r = bisimulation_check(t, compile_tree(t))
    assert r.equivalent
    total += r.paths_checked
print(f"  {total} paths checked, all equivalent")
