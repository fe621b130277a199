"""Tour of the description language: tokens, trees, counting, options.

Run: python demos/01_descriptions.py
"""

from ludic import corpus
from ludic.game import compile_game
from ludic.grammar import (count_tokens, format_tree, option_names,
                           parse_game, resolve_options, tokenize)

text = corpus.load_text("Tic-Tac-Toe")
print("The bundled Tic-Tac-Toe description:\n")
print(text)

tokens = tokenize(text)
print(f"The lexer sees {len(tokens)} tokens; the first five are:")
for t in tokens[:5]:
    print(f"  {t.kind:16s} {t.text!r}  (line {t.line}, col {t.column})")

tree = parse_game(text)
print(f"\nDescription size (atoms + call heads): {count_tokens(tree)} tokens")

print("\nSizes across the corpus:")
for name in corpus.bundled_names():
    n = count_tokens(parse_game(corpus.load_text(name)))
    print(f"  {name:14s} {n:4d} tokens")

print("\nHex ships its variants as option blocks in one file:")
hex_tree = parse_game(corpus.load_text("Hex"))
print(" ", ", ".join(option_names(hex_tree)[:5]), "...")

small = resolve_options(hex_tree, ["Board Size 5x5", "Misere"])
game = compile_game(hex_tree, ["Board Size 5x5", "Misere"])
print(f"\nResolved 'Board Size 5x5' + 'Misere': {game.num_sites} sites, "
      f"connection now {game.end_rules[0].outcome.lower()}s")

print("\nThe pretty-printer round-trips (same tree, same count):")
printed = format_tree(small)
assert parse_game(printed) == small
print(printed[:120], "...")
