/** Convert a screen-space pointer trace into a stroke payload.
 *
 * Points are mapped through the viewport into image coordinates,
 * de-duplicated consecutively, and clipped to the image bounds; points
 * falling outside the image are dropped.
 */

import type { StrokePayload } from "./types.js";
import type { Viewport } from "./viewport.js";
import { screenToImage } from "./viewport.js";

export function traceToStroke(
  trace: [number, number][],
  viewport: Viewport,
  imageWidth: number,
  imageHeight: number,
  classId: number,
  brushRadius: number,
  erase = false,
): StrokePayload | null {
  const points: [number, number][] = [];
  let last: [number, number] | null = null;
  for (const [sx, sy] of trace) {
    const [ix, iy] = screenToImage(viewport, sx, sy);
    if (ix < 0 || iy < 0 || ix >= imageWidth || iy >= imageHeight) continue;
    if (last && last[0] === ix && last[1] === iy) continue;
    last = [ix, iy];
    points.push(last);
  }
  if (points.length === 0) return null;
  return { class_id: erase ? 0 : classId, erase, brush_radius: brushRadius, points };
}
