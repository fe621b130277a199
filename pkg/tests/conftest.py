import pytest

from ludic import corpus, fastpath

import oracles


@pytest.fixture(scope="session")
def ttt():
    return corpus.load_game("Tic-Tac-Toe")


@pytest.fixture(scope="session")
def gomoku():
    return corpus.load_game("Gomoku")


@pytest.fixture(scope="session")
def connect4():
    return corpus.load_game("Connect Four")


@pytest.fixture(scope="session")
def hex11():
    return corpus.load_game("Hex")


@pytest.fixture(scope="session")
def hex9():
    return corpus.load_game("Hex 9x9")


@pytest.fixture(scope="session")
def breakthrough():
    return corpus.load_game("Breakthrough")


@pytest.fixture(scope="session")
def yavalath():
    return corpus.load_game("Yavalath")


@pytest.fixture(scope="session")
def all_games(ttt, gomoku, connect4, hex11, hex9, breakthrough, yavalath):
    return [ttt, gomoku, connect4, hex11, hex9, breakthrough, yavalath]


@pytest.fixture(scope="session")
def warm_kernel(ttt):
    """JIT-compile the playout kernel once, outside any timed assertions."""
    fastpath.warmup(fastpath.build_tables(ttt))
    return True


@pytest.fixture(scope="session")
def ttt_oracle():
    """(counts by (winner, length), reachable board set) from the
    independent enumerator."""
    return oracles.ttt_enumerate()
