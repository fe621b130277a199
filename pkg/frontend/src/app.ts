import { ApiError, ServiceClient } from "./api.js";
import { BoardRenderer, describeResult, isWellFormedView } from "./board.js";
import { MoveResolver } from "./moves.js";
import type { ControllerSpec, GameInfo, StateView } from "./types.js";

// Session driver: one in-flight request at a time, input locked while a
// request (in particular an AI reply) is pending, board and status
// re-rendered from every fresh server view.

function makeOption(value: string): HTMLOptionElement {
  const option = document.createElement("option");
  option.value = value;
  option.textContent = value;
  return option;
}

export class App {
  private client: ServiceClient;
  private games: GameInfo[] = [];
  private sessionId: string | null = null;
  private board: BoardRenderer | null = null;
  private resolver: MoveResolver = new MoveResolver([]);
  private view: StateView | null = null;
  private busy = false;
  private autoAiPly = -1;

  constructor(
    private root: HTMLElement,
    baseUrl = "",
  ) {
    this.client = new ServiceClient(baseUrl);
    this.root.innerHTML = `
      <div class="toolbar">
        <select id="game-select"></select>
        <select id="option-select" multiple size="1" title="options"></select>
        <label>P1 <select id="p1-select">
          <option value="human">human</option>
          <option value="ai">flat-mc</option>
        </select></label>
        <label>P2 <select id="p2-select">
          <option value="human">human</option>
          <option value="ai" selected>flat-mc</option>
        </select></label>
        <button id="new-game">New game</button>
        <button id="ai-move" disabled>AI move</button>
        <button id="pass" hidden>Pass</button>
      </div>
      <div id="status" class="status">No session</div>
      <div id="error" class="error" hidden></div>
      <div id="board-host"></div>
      <ol id="history" class="history"></ol>
    `;
    this.el("new-game").addEventListener("click", () => void this.newGame());
    this.el("ai-move").addEventListener("click", () => void this.requestAiMove());
    this.el("pass").addEventListener("click", () => void this.submitPass());
    this.el<HTMLSelectElement>("game-select").addEventListener("change", () =>
      this.fillOptions(),
    );
  }

  private el<T extends HTMLElement = HTMLElement>(id: string): T {
    return this.root.querySelector(`#${id}`) as T;
  }

  async start(): Promise<void> {
    this.games = await this.client.listGames();
    const select = this.el<HTMLSelectElement>("game-select");
    select.replaceChildren(...this.games.map((g) => makeOption(g.name)));
    this.fillOptions();
  }

  private fillOptions(): void {
    const name = this.el<HTMLSelectElement>("game-select").value;
    const game = this.games.find((g) => g.name === name);
    const select = this.el<HTMLSelectElement>("option-select");
    select.replaceChildren(...(game?.options ?? []).map(makeOption));
  }

  private controllerSpec(id: string): ControllerSpec {
    const value = this.el<HTMLSelectElement>(id).value;
    return value === "ai" ? { type: "flat-mc", budget: 500 } : "human";
  }

  async newGame(): Promise<void> {
    if (this.busy) return;
    const game = this.el<HTMLSelectElement>("game-select").value;
    const options = Array.from(
      this.el<HTMLSelectElement>("option-select").selectedOptions,
    ).map((o) => o.value);
    await this.locked(async () => {
      const created = await this.client.createSession(
        game,
        options,
        { "1": this.controllerSpec("p1-select"), "2": this.controllerSpec("p2-select") },
        Math.floor(Math.random() * 1_000_000),
      );
      this.sessionId = created.session;
      this.autoAiPly = -1;
      this.board = new BoardRenderer(this.el("board-host"), created.geometry, {
        onCellClick: (site) => void this.onCellClick(site),
      });
      this.applyView(created);
    });
  }

  /** Route a click through the resolver; only server-listed moves submit. */
  async onCellClick(site: number): Promise<void> {
    if (this.busy || !this.view || this.view.terminal) return;
    if (this.view.moverController !== "human") return;
    const result = this.resolver.onCellClick(site);
    if (result.kind === "submit") {
      await this.locked(async () => {
        this.applyView(await this.client.submitMove(this.sessionId!, result.index));
      });
    } else if (result.kind === "select" || result.kind === "deselect") {
      this.repaint();
    }
  }

  async submitPass(): Promise<void> {
    const index = this.resolver.passIndex();
    if (index === null || this.busy) return;
    await this.locked(async () => {
      this.applyView(await this.client.submitMove(this.sessionId!, index));
    });
  }

  async requestAiMove(): Promise<void> {
    if (this.busy || !this.view || this.view.terminal) return;
    if (this.view.moverController !== "flat-mc") return;
    await this.locked(async () => {
      this.applyView(await this.client.aiMove(this.sessionId!));
    });
  }

  /** Render a fresh server view; malformed views show the error banner. */
  applyView(view: StateView): void {
    if (!isWellFormedView(view)) {
      this.showError("malformed state view from the service");
      return;
    }
    this.view = view;
    this.resolver = new MoveResolver(view.legalMoves);
    this.showError(null);
    this.repaint();
    const history = this.el<HTMLOListElement>("history");
    history.replaceChildren(
      ...view.history.map((h) => {
        const li = document.createElement("li");
        li.textContent = h;
        return li;
      }),
    );
  }

  /** Auto-request the AI's reply once per ply (runs after the lock drops;
   * a failed request will not retry the same ply). */
  private maybeAutoAi(): void {
    if (this.busy || !this.view || this.view.terminal) return;
    if (this.view.moverController !== "flat-mc") return;
    if (this.autoAiPly === this.view.moveNumber) return;
    this.autoAiPly = this.view.moveNumber;
    void this.requestAiMove();
  }

  private repaint(): void {
    if (!this.board || !this.view) return;
    const clickable =
      this.view.terminal || this.view.moverController !== "human"
        ? new Set<number>()
        : this.resolver.clickable();
    this.board.render(this.view, clickable, this.resolver.selectedOrigin);
    const status = this.el("status");
    if (this.view.terminal) {
      status.textContent = `Game over: ${describeResult(this.view)} ` +
        `(scores ${this.view.scores!.join(", ")})`;
      status.classList.add("result");
    } else {
      status.textContent =
        `Move ${this.view.moveNumber} — P${this.view.mover} ` +
        `(${this.view.moverController}) to move`;
      status.classList.remove("result");
    }
    this.el<HTMLButtonElement>("ai-move").toggleAttribute(
      "disabled",
      this.busy || this.view.terminal || this.view.moverController !== "flat-mc",
    );
    const passable =
      !this.view.terminal &&
      this.view.moverController === "human" &&
      this.resolver.passIndex() !== null;
    this.el<HTMLButtonElement>("pass").toggleAttribute("hidden", !passable);
  }

  private showError(message: string | null): void {
    const banner = this.el("error");
    banner.toggleAttribute("hidden", message === null);
    banner.textContent = message ?? "";
  }

  private async locked(body: () => Promise<void>): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    this.repaintBusy(true);
    try {
      await body();
    } catch (err) {
      if (err instanceof ApiError) {
        this.showError(`${err.code}: ${err.message}`);
      } else {
        this.showError(String(err));
      }
    } finally {
      this.busy = false;
      this.repaintBusy(false);
      this.repaint();
      this.maybeAutoAi();
    }
  }

  private repaintBusy(busy: boolean): void {
    this.root.classList.toggle("busy", busy);
  }
}

declare global {
  interface Window {
    ludicApp?: App;
  }
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  const app = new App(document.getElementById("app")!);
  window.ludicApp = app;
  void app.start();
}
