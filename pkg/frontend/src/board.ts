import type { Geometry, StateView } from "./types.js";

// SVG board rendering from the geometry delivered at session creation.
// Polygons work unchanged for square and hex tilings; the service emits
// y-up coordinates, so rendering flips the y axis.

const SVG_NS = "http://www.w3.org/2000/svg";
const PLAYER_FILL: Record<number, string> = { 1: "#f5f5f0", 2: "#2d2d33" };

export interface BoardCallbacks {
  onCellClick(site: number): void;
}

export class BoardRenderer {
  private svg: SVGSVGElement;
  private cells: SVGPolygonElement[] = [];
  private pieceLayer: SVGGElement;

  constructor(
    host: HTMLElement,
    private geometry: Geometry,
    private callbacks: BoardCallbacks,
  ) {
    this.svg = document.createElementNS(SVG_NS, "svg");
    this.svg.setAttribute("class", "board");
    const [minX, minY, width, height] = this.viewBox();
    this.svg.setAttribute("viewBox", `${minX} ${minY} ${width} ${height}`);
    host.replaceChildren(this.svg);

    const cellLayer = document.createElementNS(SVG_NS, "g");
    this.pieceLayer = document.createElementNS(SVG_NS, "g");
    this.svg.append(cellLayer, this.pieceLayer);

    for (const site of this.geometry.sites) {
      const poly = document.createElementNS(SVG_NS, "polygon");
      poly.setAttribute(
        "points",
        site.polygon.map(([x, y]) => `${x},${-y}`).join(" "),
      );
      poly.setAttribute("class", "cell");
      poly.dataset.site = String(site.id);
      poly.addEventListener("click", () => this.callbacks.onCellClick(site.id));
      cellLayer.append(poly);
      this.cells[site.id] = poly;
    }
  }

  private viewBox(): [number, number, number, number] {
    const xs = this.geometry.sites.flatMap((s) => s.polygon.map((p) => p[0]));
    const ys = this.geometry.sites.flatMap((s) => s.polygon.map((p) => -p[1]));
    const minX = Math.min(...xs) - 0.2;
    const minY = Math.min(...ys) - 0.2;
    const width = Math.max(...xs) - minX + 0.2;
    const height = Math.max(...ys) - minY + 0.2;
    return [minX, minY, width, height];
  }

  /** Repaint pieces and highlights; the view is the only truth. */
  render(view: StateView, clickable: Set<number>, origin: number | null): void {
    this.pieceLayer.replaceChildren();
    for (const site of this.geometry.sites) {
      const cell = this.cells[site.id];
      cell.classList.toggle("clickable", clickable.has(site.id));
      cell.classList.toggle("origin", origin === site.id);
      const owner = view.who[site.id];
      if (owner > 0) {
        const [cx, cy] = site.centroid;
        const piece = document.createElementNS(SVG_NS, "circle");
        piece.setAttribute("cx", String(cx));
        piece.setAttribute("cy", String(-cy));
        piece.setAttribute("r", "0.33");
        piece.setAttribute("class", `piece player${owner}`);
        piece.setAttribute("fill", PLAYER_FILL[owner] ?? "#888");
        piece.dataset.site = String(site.id);
        piece.dataset.what = String(view.what[site.id]);
        // pieces must not swallow clicks aimed at their cell
        piece.setAttribute("pointer-events", "none");
        this.pieceLayer.append(piece);
      }
    }
  }

  cellCount(): number {
    return this.cells.filter(Boolean).length;
  }
}

export function isWellFormedView(view: unknown): view is StateView {
  if (typeof view !== "object" || view === null) return false;
  const v = view as Record<string, unknown>;
  return (
    Array.isArray(v.who) &&
    Array.isArray(v.what) &&
    Array.isArray(v.legalMoves) &&
    typeof v.mover === "number" &&
    typeof v.terminal === "boolean"
  );
}

export function describeResult(view: StateView): string {
  if (!view.terminal || !view.scores) return "";
  const best = Math.max(...view.scores);
  if (view.scores.every((s) => s === 0)) return "Draw";
  const winners = view.scores
    .map((s, i) => (s === best ? `P${i + 1}` : null))
    .filter((x): x is string => x !== null);
  return `${winners.join(" & ")} wins`;
}
