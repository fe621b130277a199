"""Access to the bundled game descriptions (.lud files)."""

from __future__ import annotations

import os
from importlib import resources

from . import grammar
from .game import Game, compile_game

GAMES_DIR_ENV = "LUDIC_GAMES_DIR"

BUNDLED = {
    "Tic-Tac-Toe": "TicTacToe.lud",
    "Gomoku": "Gomoku.lud",
    "Connect Four": "ConnectFour.lud",
    "Hex": "Hex.lud",
    "Breakthrough": "Breakthrough.lud",
    "Yavalath": "Yavalath.lud",
}

# convenient names for common option selections (benchmark tables etc.)
ALIASES: dict[str, tuple[str, list[str]]] = {
    "Hex 11x11": ("Hex", []),
    "Connect-4": ("Connect Four", []),
}
for _n in range(3, 20):
    if _n != 11:
        ALIASES[f"Hex {_n}x{_n}"] = ("Hex", [f"Board Size {_n}x{_n}"])


def games_dir() -> str | None:
    return os.environ.get(GAMES_DIR_ENV)


def resolve_name(name: str) -> tuple[str, list[str]]:
    if name in ALIASES:
        return ALIASES[name]
    return name, []


def load_text(name: str) -> str:
    base, _ = resolve_name(name)
    override = games_dir()
    if override:
        path = os.path.join(override, BUNDLED.get(base, f"{base}.lud"))
        if os.path.exists(path):
            with open(path, encoding="utf-8") as fh:
                return fh.read()
    if base not in BUNDLED:
        raise KeyError(name)
    ref = resources.files("ludic.games").joinpath(BUNDLED[base])
    return ref.read_text(encoding="utf-8")


def load_game(name: str, options: list[str] | None = None, **kwargs) -> Game:
    base, implied = resolve_name(name)
    text = load_text(base)
    return compile_game(grammar.parse_game(text), implied + list(options or []), **kwargs)


def bundled_names() -> list[str]:
    return sorted(BUNDLED)
