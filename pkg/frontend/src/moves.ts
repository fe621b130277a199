import type { LegalMove } from "./types.js";

// Click handling over the server's legal-move list. Placement games
// resolve in one click; movement games (several moves can share an
// origin or destination) use an origin -> destination two-click flow.
// Anything that does not map to exactly one listed move is a no-op.

export type ClickResult =
  | { kind: "submit"; index: number }
  | { kind: "select"; origin: number }
  | { kind: "deselect" }
  | { kind: "none" };

export class MoveResolver {
  private origin: number | null = null;

  constructor(private moves: LegalMove[]) {}

  get selectedOrigin(): number | null {
    return this.origin;
  }

  /** Sites that may be clicked right now (exactly the server's moves). */
  clickable(): Set<number> {
    const sites = new Set<number>();
    if (this.origin === null) {
      for (const m of this.moves) {
        if (m.isPass) continue;
        sites.add(m.from >= 0 ? m.from : m.to);
      }
    } else {
      for (const m of this.moves) {
        if (m.from === this.origin) sites.add(m.to);
      }
      sites.add(this.origin); // clicking the origin again deselects
    }
    return sites;
  }

  /** The pass move's index, when passing is the only choice. */
  passIndex(): number | null {
    const pass = this.moves.find((m) => m.isPass);
    return pass ? pass.index : null;
  }

  onCellClick(site: number): ClickResult {
    if (this.origin === null) {
      const placements = this.moves.filter((m) => m.from < 0 && m.to === site);
      if (placements.length === 1) {
        return { kind: "submit", index: placements[0].index };
      }
      const outgoing = this.moves.filter((m) => m.from === site);
      if (outgoing.length > 0) {
        this.origin = site;
        return { kind: "select", origin: site };
      }
      return { kind: "none" };
    }

    if (site === this.origin) {
      this.origin = null;
      return { kind: "deselect" };
    }
    const matching = this.moves.filter(
      (m) => m.from === this.origin && m.to === site,
    );
    if (matching.length === 1) {
      this.origin = null;
      return { kind: "submit", index: matching[0].index };
    }
    // allow switching to another of the mover's pieces
    const outgoing = this.moves.filter((m) => m.from === site);
    if (outgoing.length > 0) {
      this.origin = site;
      return { kind: "select", origin: site };
    }
    return { kind: "none" };
  }
}
