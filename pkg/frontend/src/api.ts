import type {
  ControllerSpec,
  CreateResponse,
  GameInfo,
  ServiceErrorBody,
  StateView,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

async function unwrap<T>(response: Response): Promise<T> {
  if (response.ok) {
    return (await response.json()) as T;
  }
  let code = "unknown";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as ServiceErrorBody;
    code = body.error.code;
    message = body.error.message;
  } catch {
    // non-JSON error body; keep the fallback
  }
  throw new ApiError(code, message, response.status);
}

export class ServiceClient {
  constructor(private readonly base: string = "") {}

  async listGames(): Promise<GameInfo[]> {
    const r = await fetch(`${this.base}/games`);
    return (await unwrap<{ games: GameInfo[] }>(r)).games;
  }

  async createSession(
    game: string,
    options: string[],
    controllers: Record<string, ControllerSpec>,
    seed: number,
  ): Promise<CreateResponse> {
    const r = await fetch(`${this.base}/sessions`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ game, options, controllers, seed }),
    });
    return unwrap<CreateResponse>(r);
  }

  async getState(sessionId: string): Promise<StateView> {
    const r = await fetch(`${this.base}/sessions/${sessionId}`);
    return unwrap<StateView>(r);
  }

  async submitMove(sessionId: string, index: number): Promise<StateView> {
    const r = await fetch(`${this.base}/sessions/${sessionId}/moves`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ index }),
    });
    return unwrap<StateView>(r);
  }

  async aiMove(sessionId: string): Promise<StateView> {
    const r = await fetch(`${this.base}/sessions/${sessionId}/ai-move`, {
      method: "POST",
    });
    return unwrap<StateView>(r);
  }
}
