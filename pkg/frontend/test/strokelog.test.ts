import { describe, expect, it } from "vitest";
import { StrokeLog } from "../src/strokelog.js";
import type { StrokePayload } from "../src/types.js";

function stroke(classId: number): StrokePayload {
  return { class_id: classId, erase: false, brush_radius: 1, points: [[classId, 0]] };
}

describe("StrokeLog", () => {
  it("prefix(1) drops the most recent stroke", () => {
    const log = new StrokeLog();
    log.push(stroke(1));
    log.push(stroke(2));
    log.push(stroke(3));
    expect(log.prefix(1).map((s) => s.class_id)).toEqual([1, 2]);
    expect(log.prefix(5)).toEqual([]);
  });

  it("truncate shortens the history in place", () => {
    const log = new StrokeLog();
    log.push(stroke(1));
    log.push(stroke(2));
    log.truncate(1);
    expect(log.length).toBe(1);
    expect(log.all[0].class_id).toBe(1);
  });

  it("JSON round trip preserves every field", () => {
    const log = new StrokeLog();
    log.push({ class_id: 2, erase: true, brush_radius: 4, points: [[1, 2], [3, 4]] });
    const restored = StrokeLog.fromJSON(log.toJSON());
    expect(restored.all).toEqual(log.all);
  });

  it("serialized form matches the service request schema", () => {
    const log = new StrokeLog();
    log.push(stroke(1));
    const parsed = JSON.parse(log.toJSON());
    expect(parsed).toEqual({
      strokes: [{ class_id: 1, erase: false, brush_radius: 1, points: [[1, 0]] }],
    });
  });

  it("rejects malformed input", () => {
    expect(() => StrokeLog.fromJSON("{}")).toThrow(/strokes/);
    expect(() => StrokeLog.fromJSON('{"strokes":[{"points":3}]}')).toThrow(/malformed/);
  });
});
