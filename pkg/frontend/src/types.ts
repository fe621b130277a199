// Wire types mirroring docs/api.md. The client never computes rules:
// everything it displays or submits comes from these payloads verbatim.

export interface SiteGeometry {
  id: number;
  centroid: [number, number];
  polygon: [number, number][];
}

export interface Geometry {
  tiling: "square" | "hex" | "tree";
  sites: SiteGeometry[];
  edges: [number, number][];
}

export interface LegalMove {
  index: number;
  description: string;
  from: number;
  to: number;
  isPass: boolean;
}

export interface StateView {
  session: string;
  game: string;
  players: number;
  mover: number;
  moverController: "human" | "flat-mc" | null;
  moveNumber: number;
  consecutivePasses: number;
  terminal: boolean;
  scores: number[] | null;
  what: number[];
  who: number[];
  legalMoves: LegalMove[];
  history: string[];
  stateHash: string;
}

export interface CreateResponse extends StateView {
  geometry: Geometry;
  controllers: Record<string, ControllerSpec>;
}

export type ControllerSpec = "human" | { type: "flat-mc"; budget: number };

export interface GameInfo {
  name: string;
  options: string[];
}

export interface ServiceErrorBody {
  error: { code: string; message: string };
}
