/** Browser annotator: brush seeds per class, live segmentation overlay.
 *
 * Layers (stacked canvases): image, seed strokes, segmentation overlay,
 * superpixel boundaries. The seed layer is redrawn purely from the stroke
 * log; segmentation pixels come straight from the service and are never
 * modified client-side.
 */

import { ApiError, SegmentationApi } from "./api.js";
import { ClassPalette } from "./palette.js";
import { traceToStroke } from "./stroke.js";
import { StrokeLog } from "./strokelog.js";
import type { StrokePayload } from "./types.js";
import { imageToScreen, makeViewport, setZoom, type Viewport } from "./viewport.js";

const ZOOM_LEVELS = [0.25, 0.5, 1, 2, 4, 8];

class AnnotatorApp {
  private api: SegmentationApi;
  private palette = new ClassPalette(2);
  private log = new StrokeLog();
  private viewport: Viewport = makeViewport(1);

  private sessionId: string | null = null;
  private imageBitmap: ImageBitmap | null = null;
  private imageBlob: Blob | null = null;
  private imageWidth = 0;
  private imageHeight = 0;

  private overlayBitmap: ImageBitmap | null = null;
  private superpixelBitmap: ImageBitmap | null = null;
  private showSuperpixels = false;
  private overlayOpacity = 0.5;
  private brushRadius = 3;
  private erasing = false;

  private trace: [number, number][] = [];
  private drawing = false;
  private posting = false;
  private pending: StrokePayload[] = [];

  private canvas: HTMLCanvasElement;
  private ctx: CanvasRenderingContext2D;
  private hint: HTMLElement;

  constructor(root: HTMLElement, baseUrl: string) {
    this.api = new SegmentationApi(baseUrl);
    root.innerHTML = this.template();
    this.canvas = root.querySelector("#annotator-canvas") as HTMLCanvasElement;
    this.ctx = this.canvas.getContext("2d")!;
    this.hint = root.querySelector("#hint") as HTMLElement;
    this.wireControls(root);
    this.wirePointer();
    this.renderPalette(root);
  }

  private template(): string {
    return `
      <div class="toolbar">
        <input type="file" id="file-input" accept="image/png,image/jpeg">
        <span id="class-buttons"></span>
        <button id="add-class">+ class</button>
        <label>brush <input type="range" id="brush" min="0" max="20" value="3"></label>
        <button id="erase">erase: off</button>
        <button id="zoom-out">−</button>
        <span id="zoom-label">100%</span>
        <button id="zoom-in">+</button>
        <button id="toggle-sp">superpixels</button>
        <label>overlay <input type="range" id="opacity" min="0" max="100" value="50"></label>
        <button id="undo">undo</button>
        <button id="export-log">export strokes</button>
        <input type="file" id="import-log" accept="application/json" style="display:none">
        <button id="import-log-btn">import strokes</button>
      </div>
      <div id="hint" class="hint"></div>
      <canvas id="annotator-canvas" width="800" height="600"></canvas>
    `;
  }

  private wireControls(root: HTMLElement): void {
    const file = root.querySelector("#file-input") as HTMLInputElement;
    file.addEventListener("change", () => {
      if (file.files && file.files[0]) void this.loadImage(file.files[0]);
    });
    (root.querySelector("#add-class") as HTMLButtonElement).addEventListener("click", () => {
      this.palette.addClass();
      this.renderPalette(root);
    });
    const brush = root.querySelector("#brush") as HTMLInputElement;
    brush.addEventListener("input", () => (this.brushRadius = Number(brush.value)));
    const erase = root.querySelector("#erase") as HTMLButtonElement;
    erase.addEventListener("click", () => {
      this.erasing = !this.erasing;
      erase.textContent = `erase: ${this.erasing ? "on" : "off"}`;
    });
    (root.querySelector("#zoom-in") as HTMLButtonElement).addEventListener("click", () =>
      this.stepZoom(root, 1));
    (root.querySelector("#zoom-out") as HTMLButtonElement).addEventListener("click", () =>
      this.stepZoom(root, -1));
    (root.querySelector("#toggle-sp") as HTMLButtonElement).addEventListener("click", () =>
      void this.toggleSuperpixels());
    const opacity = root.querySelector("#opacity") as HTMLInputElement;
    opacity.addEventListener("input", () => {
      this.overlayOpacity = Number(opacity.value) / 100;
      this.render();
    });
    (root.querySelector("#undo") as HTMLButtonElement).addEventListener("click", () =>
      void this.undo());
    (root.querySelector("#export-log") as HTMLButtonElement).addEventListener("click", () =>
      this.exportLog());
    const importInput = root.querySelector("#import-log") as HTMLInputElement;
    (root.querySelector("#import-log-btn") as HTMLButtonElement).addEventListener("click", () =>
      importInput.click());
    importInput.addEventListener("change", () => {
      if (importInput.files && importInput.files[0]) void this.importLog(importInput.files[0]);
    });
  }

  private renderPalette(root: HTMLElement): void {
    const span = root.querySelector("#class-buttons") as HTMLElement;
    span.innerHTML = "";
    for (const entry of this.palette.all) {
      const btn = document.createElement("button");
      btn.textContent = entry.name;
      btn.style.borderBottom = `3px solid ${entry.color}`;
      btn.style.fontWeight = entry.classId === this.palette.activeClass ? "bold" : "normal";
      btn.addEventListener("click", () => {
        this.palette.setActive(entry.classId);
        this.renderPalette(root);
      });
      span.appendChild(btn);
    }
  }

  private stepZoom(root: HTMLElement, direction: 1 | -1): void {
    const idx = ZOOM_LEVELS.indexOf(this.viewport.zoom);
    const next = ZOOM_LEVELS[Math.min(ZOOM_LEVELS.length - 1, Math.max(0, idx + direction))];
    this.viewport = setZoom(this.viewport, next, this.canvas.width / 2, this.canvas.height / 2);
    (root.querySelector("#zoom-label") as HTMLElement).textContent =
      `${Math.round(next * 100)}%`;
    this.render();
  }

  private wirePointer(): void {
    this.canvas.addEventListener("pointerdown", (e) => {
      if (!this.sessionId) return;
      this.drawing = true;
      this.trace = [[e.offsetX, e.offsetY]];
      this.render();
    });
    this.canvas.addEventListener("pointermove", (e) => {
      if (!this.drawing) return;
      this.trace.push([e.offsetX, e.offsetY]);
      this.render();
    });
    const finish = () => {
      if (!this.drawing) return;
      this.drawing = false;
      const stroke = traceToStroke(
        this.trace, this.viewport, this.imageWidth, this.imageHeight,
        this.palette.activeClass, this.brushRadius, this.erasing,
      );
      this.trace = [];
      if (stroke) {
        this.log.push(stroke);
        this.enqueue(stroke);
      }
      this.render();
    };
    this.canvas.addEventListener("pointerup", finish);
    this.canvas.addEventListener("pointerleave", finish);
  }

  private async loadImage(blob: Blob): Promise<void> {
    this.imageBlob = blob;
    this.imageBitmap = await createImageBitmap(blob);
    this.imageWidth = this.imageBitmap.width;
    this.imageHeight = this.imageBitmap.height;
    this.log = new StrokeLog();
    this.overlayBitmap = null;
    this.superpixelBitmap = null;
    try {
      const info = await this.api.createSession(blob);
      this.sessionId = info.id;
      this.setHint(`session ready: ${info.num_superpixels} superpixels — draw seeds`);
    } catch (err) {
      this.sessionId = null;
      this.setHint(`could not create session: ${describe(err)}`, true);
    }
    this.render();
  }

  /** Single in-flight post; further strokes buffer and flush in order. */
  private enqueue(stroke: StrokePayload): void {
    this.pending.push(stroke);
    void this.flush();
  }

  private async flush(): Promise<void> {
    if (this.posting || this.pending.length === 0 || !this.sessionId) return;
    const batch = this.pending;
    this.pending = [];
    this.posting = true;
    try {
      const resp = await this.api.postStrokes(this.sessionId, batch);
      await this.sync(resp.error);
    } catch (err) {
      if (err instanceof ApiError && err.status === 404) {
        this.setHint("session lost (server restarted?) — stroke log kept; " +
          "export it or reload the image to replay", true);
        this.sessionId = null;
      } else {
        // network failure: keep the strokes, offer a retry
        this.pending = batch.concat(this.pending);
        this.setHint(`stroke post failed: ${describe(err)} — will retry on next stroke`, true);
      }
    } finally {
      this.posting = false;
    }
    if (this.pending.length > 0) void this.flush();
  }

  private async sync(error: string | null): Promise<void> {
    if (error) {
      // expected interaction state, not a failure
      this.setHint(error === "<2 classes seeded"
        ? "seed at least two classes to get a segmentation"
        : error);
      return;
    }
    if (!this.sessionId) return;
    const blob = await this.api.getSegmentation(this.sessionId, "overlay");
    this.overlayBitmap = await createImageBitmap(blob);
    this.setHint("");
    this.render();
  }

  private async toggleSuperpixels(): Promise<void> {
    if (!this.sessionId) return;
    if (!this.superpixelBitmap) {
      const blob = await this.api.getSuperpixelOverlay(this.sessionId);
      this.superpixelBitmap = await createImageBitmap(blob);
    }
    this.showSuperpixels = !this.showSuperpixels;
    this.render();
  }

  /** Undo = replay the stroke-log prefix through a fresh session. */
  private async undo(): Promise<void> {
    if (!this.imageBlob || this.log.length === 0) return;
    const prefix = this.log.prefix(1);
    this.log.truncate(prefix.length);
    if (this.sessionId) await this.api.deleteSession(this.sessionId).catch(() => undefined);
    const info = await this.api.createSession(this.imageBlob);
    this.sessionId = info.id;
    this.overlayBitmap = null;
    this.superpixelBitmap = null;
    if (prefix.length > 0) {
      const resp = await this.api.postStrokes(this.sessionId, prefix);
      await this.sync(resp.error);
    }
    this.render();
  }

  private exportLog(): void {
    const url = URL.createObjectURL(new Blob([this.log.toJSON()], { type: "application/json" }));
    const a = document.createElement("a");
    a.href = url;
    a.download = "strokes.json";
    a.click();
    URL.revokeObjectURL(url);
  }

  private async importLog(file: Blob): Promise<void> {
    const log = StrokeLog.fromJSON(await file.text());
    if (!this.sessionId) {
      this.setHint("load an image before importing strokes", true);
      return;
    }
    this.log = log;
    const resp = await this.api.postStrokes(this.sessionId, [...log.all]);
    await this.sync(resp.error);
  }

  private setHint(text: string, isError = false): void {
    this.hint.textContent = text;
    this.hint.style.color = isError ? "#b00020" : "#444";
  }

  private render(): void {
    const { ctx, canvas } = this;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (!this.imageBitmap) return;
    const v = this.viewport;
    ctx.imageSmoothingEnabled = v.zoom < 1;
    const w = this.imageWidth * v.zoom;
    const h = this.imageHeight * v.zoom;
    ctx.drawImage(this.imageBitmap, v.panX, v.panY, w, h);
    if (this.overlayBitmap) {
      ctx.globalAlpha = this.overlayOpacity;
      ctx.drawImage(this.overlayBitmap, v.panX, v.panY, w, h);
      ctx.globalAlpha = 1;
    }
    if (this.showSuperpixels && this.superpixelBitmap) {
      ctx.globalAlpha = 0.7;
      ctx.drawImage(this.superpixelBitmap, v.panX, v.panY, w, h);
      ctx.globalAlpha = 1;
    }
    this.renderSeeds();
    this.renderTrace();
  }

  /** Seed layer drawn purely from the stroke log (plus the live trace). */
  private renderSeeds(): void {
    const { ctx } = this;
    for (const stroke of this.log.all) {
      ctx.strokeStyle = stroke.erase ? "#ffffff" : this.palette.colorOf(stroke.class_id);
      ctx.lineWidth = Math.max(1, (2 * stroke.brush_radius + 1) * this.viewport.zoom);
      ctx.lineCap = "round";
      ctx.lineJoin = "round";
      ctx.beginPath();
      stroke.points.forEach(([ix, iy], i) => {
        const [sx, sy] = imageToScreen(this.viewport, ix, iy);
        if (i === 0) ctx.moveTo(sx, sy);
        else ctx.lineTo(sx, sy);
      });
      ctx.stroke();
    }
  }

  private renderTrace(): void {
    if (this.trace.length === 0) return;
    const { ctx } = this;
    ctx.strokeStyle = this.erasing ? "#ffffff" : this.palette.colorOf(this.palette.activeClass);
    ctx.lineWidth = Math.max(1, (2 * this.brushRadius + 1) * this.viewport.zoom);
    ctx.lineCap = "round";
    ctx.beginPath();
    this.trace.forEach(([sx, sy], i) => {
      if (i === 0) ctx.moveTo(sx, sy);
      else ctx.lineTo(sx, sy);
    });
    ctx.stroke();
  }
}

function describe(err: unknown): string {
  return err instanceof Error ? err.message : String(err);
}

export function mount(rootId = "app", baseUrl = "http://localhost:8000"): AnnotatorApp {
  const root = document.getElementById(rootId);
  if (!root) throw new Error(`no element #${rootId}`);
  return new AnnotatorApp(root, baseUrl);
}
