import { beforeEach, describe, expect, it, vi } from "vitest";

import { App } from "../src/app.js";
import type { StateView } from "../src/types.js";

// Client behavior against a canned service: the app must submit exactly
// the clicked server move, leave the board alone on rejected calls, and
// show every view verbatim. No rules live here.

function view(partial: Partial<StateView>): StateView {
  return {
    session: "sess1",
    game: "Tic-Tac-Toe",
    players: 2,
    mover: 1,
    moverController: "human",
    moveNumber: 0,
    consecutivePasses: 0,
    terminal: false,
    scores: null,
    what: Array(9).fill(0),
    who: Array(9).fill(0),
    legalMoves: [],
    history: [],
    stateHash: "h0",
    ...partial,
  };
}

function moves(sites: number[]) {
  return sites.map((s, i) => ({
    index: i,
    description: `P: ${s}`,
    from: -1,
    to: s,
    isPass: false,
  }));
}

function geometry() {
  const sites = [];
  for (let r = 0; r < 3; r++) {
    for (let c = 0; c < 3; c++) {
      sites.push({
        id: r * 3 + c,
        centroid: [c + 0.5, r + 0.5] as [number, number],
        polygon: [
          [c, r],
          [c + 1, r],
          [c + 1, r + 1],
          [c, r + 1],
        ] as [number, number][],
      });
    }
  }
  return { tiling: "square" as const, sites, edges: [] };
}

interface Exchange {
  method: string;
  path: string;
  body?: unknown;
  status?: number;
  response: unknown;
}

function installFetchScript(script: Exchange[]): () => Exchange[] {
  const remaining = [...script];
  const seen: Exchange[] = [];
  vi.stubGlobal("fetch", async (url: string, init?: RequestInit) => {
    const method = init?.method ?? "GET";
    const expected = remaining.shift();
    if (!expected) throw new Error(`unexpected request ${method} ${url}`);
    expect(`${method} ${url}`).toBe(`${expected.method} ${expected.path}`);
    if (expected.body !== undefined) {
      expect(JSON.parse(String(init?.body))).toEqual(expected.body);
    }
    seen.push(expected);
    return {
      ok: (expected.status ?? 200) < 400,
      status: expected.status ?? 200,
      json: async () => expected.response,
    } as Response;
  });
  return () => remaining;
}

async function settle(): Promise<void> {
  for (let i = 0; i < 20; i++) await Promise.resolve();
}

function clickCell(root: HTMLElement, site: number): void {
  const cell = root.querySelector(`polygon[data-site="${site}"]`) as SVGElement;
  cell.dispatchEvent(new MouseEvent("click", { bubbles: true }));
}

describe("App", () => {
  let root: HTMLElement;

  beforeEach(() => {
    document.body.innerHTML = '<div id="approot"></div>';
    root = document.getElementById("approot")!;
    vi.unstubAllGlobals();
  });

  it("creates a session and renders the fresh board", async () => {
    const leftover = installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ legalMoves: moves([0, 1, 2, 3, 4, 5, 6, 7, 8]) }),
                    geometry: geometry(), controllers: { "1": "human", "2": "human" } } },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    expect(leftover().length).toBe(0);
    expect(root.querySelectorAll("polygon.cell").length).toBe(9);
    expect(root.querySelectorAll("polygon.cell.clickable").length).toBe(9);
    expect(root.querySelector("#status")!.textContent).toContain("P1 (human)");
  });

  it("submits exactly the clicked move and repaints from the reply", async () => {
    const after = view({
      mover: 2,
      moveNumber: 1,
      who: [0, 0, 0, 0, 1, 0, 0, 0, 0],
      what: [0, 0, 0, 0, 1, 0, 0, 0, 0],
      legalMoves: moves([0, 1, 2, 3, 5, 6, 7, 8]),
      history: ["P1: b2"],
      stateHash: "h1",
    });
    const leftover = installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ legalMoves: moves([0, 1, 2, 3, 4, 5, 6, 7, 8]) }),
                    geometry: geometry(), controllers: { "1": "human", "2": "human" } } },
      { method: "POST", path: "/sessions/sess1/moves", body: { index: 4 },
        response: after },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    clickCell(root, 4);
    await settle();
    expect(leftover().length).toBe(0);
    expect(root.querySelectorAll("circle.piece").length).toBe(1);
    expect(root.querySelector("#history")!.textContent).toContain("P1: b2");
  });

  it("never submits for a cell without a server move", async () => {
    const leftover = installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ legalMoves: moves([0, 1]) }), geometry: geometry(),
                    controllers: { "1": "human", "2": "human" } } },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    clickCell(root, 7); // not in the legal-move list: no request goes out
    await settle();
    expect(leftover().length).toBe(0);
  });

  it("a rejected submission shows the error and keeps the board", async () => {
    const leftover = installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ legalMoves: moves([3]) }), geometry: geometry(),
                    controllers: { "1": "human", "2": "human" } } },
      { method: "POST", path: "/sessions/sess1/moves", body: { index: 0 },
        status: 400,
        response: { error: { code: "illegal-move", message: "nope" } } },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    const piecesBefore = root.querySelectorAll("circle.piece").length;
    clickCell(root, 3);
    await settle();
    expect(leftover().length).toBe(0);
    expect(root.querySelector("#error")!.textContent).toContain("illegal-move");
    expect(root.querySelectorAll("circle.piece").length).toBe(piecesBefore);
  });

  it("terminal views show the result banner and disable the AI button", async () => {
    const leftover = installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ terminal: true, legalMoves: [], scores: [1, -1],
                              moverController: null }),
                    geometry: geometry(), controllers: { "1": "human", "2": "human" } } },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    expect(leftover().length).toBe(0);
    expect(root.querySelector("#status")!.textContent).toContain("P1 wins");
    expect(root.querySelectorAll(".clickable").length).toBe(0);
    const aiButton = root.querySelector("#ai-move") as HTMLButtonElement;
    expect(aiButton.hasAttribute("disabled")).toBe(true);
  });

  it("the AI button is disabled during a human turn", async () => {
    installFetchScript([
      { method: "GET", path: "/games",
        response: { games: [{ name: "Tic-Tac-Toe", options: [] }] } },
      { method: "POST", path: "/sessions",
        response: { ...view({ legalMoves: moves([0]) }), geometry: geometry(),
                    controllers: { "1": "human", "2": "human" } } },
    ]);
    const app = new App(root);
    await app.start();
    (root.querySelector("#p2-select") as HTMLSelectElement).value = "human";
    (root.querySelector("#new-game") as HTMLButtonElement).click();
    await settle();
    const aiButton = root.querySelector("#ai-move") as HTMLButtonElement;
    expect(aiButton.hasAttribute("disabled")).toBe(true);
  });
});
