/** Ordered stroke history; undo is prefix replay through a fresh session.
 *
 * The log serializes to the same JSON schema the service consumes, so an
 * exported file can be re-imported or posted directly.
 */

import type { StrokePayload } from "./types.js";

export class StrokeLog {
  private strokes: StrokePayload[] = [];

  push(stroke: StrokePayload): void {
    this.strokes.push(stroke);
  }

  get length(): number {
    return this.strokes.length;
  }

  get all(): readonly StrokePayload[] {
    return this.strokes;
  }

  /** Strokes remaining after undoing the last `n`. */
  prefix(n = 1): StrokePayload[] {
    return this.strokes.slice(0, Math.max(0, this.strokes.length - n));
  }

  truncate(length: number): void {
    this.strokes = this.strokes.slice(0, Math.max(0, length));
  }

  toJSON(): string {
    return JSON.stringify({ strokes: this.strokes }, null, 2);
  }

  static fromJSON(text: string): StrokeLog {
    const parsed = JSON.parse(text);
    if (!parsed || !Array.isArray(parsed.strokes)) {
      throw new Error("not a stroke log: missing strokes array");
    }
    const log = new StrokeLog();
    for (const s of parsed.strokes) {
      if (typeof s.class_id !== "number" || !Array.isArray(s.points)) {
        throw new Error("malformed stroke entry");
      }
      log.push({
        class_id: s.class_id,
        erase: Boolean(s.erase),
        brush_radius: typeof s.brush_radius === "number" ? s.brush_radius : 0,
        points: s.points.map((p: [number, number]) => [p[0], p[1]]),
      });
    }
    return log;
  }
}
