import pytest
from fastapi.testclient import TestClient

from ludic import corpus
from ludic.rules import apply_start, describe_move, legal_moves, successor
from ludic.service import create_app


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, game="Tic-Tac-Toe", **kwargs):
    payload = {"game": game, **kwargs}
    r = client.post("/sessions", json=payload)
    assert r.status_code == 201, r.text
    return r.json()


def test_health(client):
    r = client.get("/health")
    assert r.status_code == 200
    assert r.json()["status"] == "ok"


def test_games_listing(client):
    r = client.get("/games")
    names = {g["name"] for g in r.json()["games"]}
    assert names == set(corpus.bundled_names())
    hex_entry = next(g for g in r.json()["games"] if g["name"] == "Hex")
    assert "Misere" in hex_entry["options"]


def test_create_session_geometry_and_state(client):
    view = make_session(client, controllers={"2": {"type": "flat-mc", "budget": 300}})
    assert view["players"] == 2 and view["mover"] == 1
    assert len(view["geometry"]["sites"]) == 9
    assert all(len(s["polygon"]) == 4 for s in view["geometry"]["sites"])
    assert len(view["geometry"]["edges"]) == 12
    assert len(view["legalMoves"]) == 9
    assert view["controllers"]["2"] == {"type": "flat-mc", "budget": 300}
    assert view["terminal"] is False and view["scores"] is None


def test_hex11_geometry_site_count(client):
    view = make_session(client, game="Hex")
    assert len(view["geometry"]["sites"]) == 121
    assert all(len(s["polygon"]) == 6 for s in view["geometry"]["sites"])


def test_unknown_game_404(client):
    r = client.post("/sessions", json={"game": "NoSuchGame"})
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "unknown-game"


def test_unknown_session_404(client):
    r = client.get("/sessions/deadbeef")
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "unknown-session"


def test_submit_move_and_view_consistency(client):
    view = make_session(client)
    sid = view["session"]
    r = client.post(f"/sessions/{sid}/moves", json={"index": 4})
    view = r.json()
    assert view["who"][4] == 1 and view["mover"] == 2
    assert view["moveNumber"] == 1
    assert len(view["history"]) == 1

    # the served legal-move list equals the engine's, element for element
    game = corpus.load_game("Tic-Tac-Toe")
    state = apply_start(game)
    state = successor(game, state, legal_moves(game, state)[4])
    expected = [describe_move(game, m) for m in legal_moves(game, state)]
    assert [m["description"] for m in view["legalMoves"]] == expected


def test_illegal_index_rejected_without_mutation(client):
    view = make_session(client)
    sid = view["session"]
    before = client.get(f"/sessions/{sid}").json()["stateHash"]
    r = client.post(f"/sessions/{sid}/moves", json={"index": 99})
    assert r.status_code == 400
    assert r.json()["error"]["code"] == "illegal-move"
    after = client.get(f"/sessions/{sid}").json()["stateHash"]
    assert before == after


def test_wrong_turn_codes(client):
    view = make_session(client, controllers={"2": {"type": "flat-mc", "budget": 60}})
    sid = view["session"]
    r = client.post(f"/sessions/{sid}/ai-move")  # it's the human's turn
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "wrong-turn"
    client.post(f"/sessions/{sid}/moves", json={"index": 0})
    r = client.post(f"/sessions/{sid}/moves", json={"index": 1})  # AI's turn now
    assert r.status_code == 409
    assert r.json()["error"]["code"] == "wrong-turn"


def test_ai_move_deterministic_per_session_seed(client, warm_kernel):
    replies = []
    for _ in range(2):
        view = make_session(client, seed=11,
                            controllers={"2": {"type": "flat-mc", "budget": 90}})
        sid = view["session"]
        client.post(f"/sessions/{sid}/moves", json={"index": 0})
        r = client.post(f"/sessions/{sid}/ai-move")
        replies.append(r.json()["history"][-1])
    assert replies[0] == replies[1]


def test_ai_takes_immediate_win(client, warm_kernel):
    view = make_session(client, controllers={"2": {"type": "flat-mc", "budget": 900}})
    sid = view["session"]
    app_store = client.app.state.store
    session = app_store.get(sid)
    # craft: P1 a1 b1 + far corner, P2 a2 b2; P2 to move wins at c2 (site 5)
    game = session.game
    s = apply_start(game)
    for site in (0, 3, 1, 4, 8):
        s = successor(game, s, next(m for m in legal_moves(game, s)
                                    if m.to_site == site))
    session.state = s
    assert s.mover == 2
    r = client.post(f"/sessions/{sid}/ai-move")
    view = r.json()
    assert view["terminal"] is True
    assert view["scores"] == [-1.0, 1.0]
    assert view["who"][5] == 2


def test_full_ai_vs_ai_game_terminates(client, warm_kernel):
    view = make_session(client, seed=3, controllers={
        "1": {"type": "flat-mc", "budget": 45},
        "2": {"type": "flat-mc", "budget": 45}})
    sid = view["session"]
    for _ in range(12):
        r = client.post(f"/sessions/{sid}/ai-move")
        if r.status_code == 400:  # game over
            break
        view = r.json()
        if view["terminal"]:
            break
    assert view["terminal"] is True
    assert view["moveNumber"] <= 11  # 9 placements plus at most 2 passes


def test_history_replay_hash(client):
    view = make_session(client)
    sid = view["session"]
    for index in (4, 0, 2):
        view = client.post(f"/sessions/{sid}/moves", json={"index": index}).json()
    assert len(view["history"]) == 3
    # replay the session server-side moves locally and compare hashes
    store = client.app.state.store
    session = store.get(sid)
    state = session.initial.copy()
    for move in session.moves:
        state = successor(session.game, state, move)
    assert format(state.state_hash(), "016x") == view["stateHash"]


def test_options_flow_through(client):
    view = make_session(client, game="Hex", options=["Board Size 5x5", "Misere"])
    assert len(view["geometry"]["sites"]) == 25
    r = client.post("/sessions", json={"game": "Hex", "options": ["Nonsense"]})
    assert r.status_code == 400


def test_terminal_session_rejects_moves(client):
    view = make_session(client)
    sid = view["session"]
    store = client.app.state.store
    session = store.get(sid)
    game = session.game
    s = apply_start(game)
    for site in (0, 3, 1, 4, 2):
        s = successor(game, s, next(m for m in legal_moves(game, s)
                                    if m.to_site == site))
    session.state = s
    view = client.get(f"/sessions/{sid}").json()
    assert view["terminal"] is True and view["legalMoves"] == []
    assert view["scores"] == [1.0, -1.0]
    r = client.post(f"/sessions/{sid}/moves", json={"index": 0})
    assert r.status_code == 400


def test_concurrent_submissions_serialize():
    import threading

    client = TestClient(create_app())
    view = make_session(client, game="Gomoku")
    sid = view["session"]
    results = []

    def hammer():
        for _ in range(10):
            r = client.post(f"/sessions/{sid}/moves", json={"index": 0})
            results.append(r.status_code)

    workers = [threading.Thread(target=hammer) for _ in range(4)]
    for w in workers:
        w.start()
    for w in workers:
        w.join()
    assert all(code == 200 for code in results)
    final = client.get(f"/sessions/{sid}").json()
    # every accepted move landed exactly once, in one serialized order
    assert final["moveNumber"] == 40
    assert len(final["history"]) == 40
    store = client.app.state.store
    session = store.get(sid)
    state = session.initial.copy()
    for move in session.moves:
        state = successor(session.game, state, move)
    assert format(state.state_hash(), "016x") == final["stateHash"]


def test_session_eviction():
    client = TestClient(create_app(session_timeout=0.0))
    view = make_session(client)
    sid = view["session"]
    r = client.get(f"/sessions/{sid}")
    assert r.status_code == 404
    assert r.json()["error"]["code"] == "unknown-session"
