/** Screen <-> image coordinate mapping under zoom and pan.
 *
 * Screen position s of image pixel p is s = p * zoom + pan. Image
 * coordinates are integer pixel indices; the round trip
 * image -> screen -> image is the identity for every zoom > 0.
 */

export interface Viewport {
  zoom: number;
  panX: number;
  panY: number;
}

export function makeViewport(zoom = 1): Viewport {
  if (zoom <= 0) throw new Error("zoom must be positive");
  return { zoom, panX: 0, panY: 0 };
}

export function screenToImage(v: Viewport, sx: number, sy: number): [number, number] {
  return [Math.floor((sx - v.panX) / v.zoom), Math.floor((sy - v.panY) / v.zoom)];
}

export function imageToScreen(v: Viewport, ix: number, iy: number): [number, number] {
  // center of the pixel's screen footprint
  return [v.panX + (ix + 0.5) * v.zoom, v.panY + (iy + 0.5) * v.zoom];
}

export function setZoom(v: Viewport, zoom: number, anchorX: number, anchorY: number): Viewport {
  if (zoom <= 0) throw new Error("zoom must be positive");
  // keep the image point under the anchor fixed on screen
  const scale = zoom / v.zoom;
  return {
    zoom,
    panX: anchorX - (anchorX - v.panX) * scale,
    panY: anchorY - (anchorY - v.panY) * scale,
  };
}

export function pan(v: Viewport, dx: number, dy: number): Viewport {
  return { zoom: v.zoom, panX: v.panX + dx, panY: v.panY + dy };
}
