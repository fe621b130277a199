"""Drive the play service end to end: create a session, submit human
moves, let the flat-Monte-Carlo AI answer.

Run: python demos/06_play_vs_ai.py
"""

from fastapi.testclient import TestClient

from ludic.service import create_app

client = TestClient(create_app())

view = client.post("/sessions", json={
    "game": "Tic-Tac-Toe",
    "controllers": {"2": {"type": "flat-mc", "budget": 900}},
    "seed": 5,
}).json()
sid = view["session"]
print(f"Session {sid}: {len(view['geometry']['sites'])} sites, "
      f"{len(view['legalMoves'])} legal moves, P{view['mover']} (human) to move")


def show(view):
    sym = {0: ".", 1: "X", 2: "O"}
    rows = []
    for r in (2, 1, 0):  # row 0 is the bottom
        rows.append(" ".join(sym[view["who"][r * 3 + c]] for c in range(3)))
    return "\n".join("   " + row for row in rows)


# the human plays a simple plan: center, then first highlighted cell
human_plan = iter([4, 0, 1, 2, 3, 5, 6, 7, 8])
while not view["terminal"]:
    if view["moverController"] == "human":
        want = next(human_plan)
        indices = [m["index"] for m in view["legalMoves"] if m["to"] == want]
        index = indices[0] if indices else view["legalMoves"][0]["index"]
        view = client.post(f"/sessions/{sid}/moves", json={"index": index}).json()
    else:
        view = client.post(f"/sessions/{sid}/ai-move").json()
    print(f"\n{view['history'][-1]}")
    print(show(view))

print(f"\nGame over after {view['moveNumber']} moves; scores {view['scores']}")
