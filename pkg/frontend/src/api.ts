/** Typed client for the segmentation service. */

import type { SessionInfo, StrokePayload, StrokeResponse } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function check(resp: Response): Promise<Response> {
  if (!resp.ok) {
    let detail = resp.statusText;
    try {
      const body = await resp.json();
      if (body.detail) detail = body.detail;
    } catch {
      // non-JSON error body
    }
    throw new ApiError(resp.status, detail);
  }
  return resp;
}

export class SegmentationApi {
  constructor(private baseUrl: string = "http://localhost:8000") {}

  async createSession(image: Blob): Promise<SessionInfo> {
    const resp = await check(
      await fetch(`${this.baseUrl}/sessions`, { method: "POST", body: image }),
    );
    return resp.json();
  }

  async postStrokes(sessionId: string, strokes: StrokePayload[]): Promise<StrokeResponse> {
    const resp = await check(
      await fetch(`${this.baseUrl}/sessions/${sessionId}/strokes`, {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ strokes }),
      }),
    );
    return resp.json();
  }

  async getSegmentation(sessionId: string, format: "indexed" | "overlay"): Promise<Blob> {
    const resp = await check(
      await fetch(`${this.baseUrl}/sessions/${sessionId}/segmentation?format=${format}`),
    );
    return resp.blob();
  }

  async getSuperpixelOverlay(sessionId: string): Promise<Blob> {
    const resp = await check(await fetch(`${this.baseUrl}/sessions/${sessionId}/superpixels`));
    return resp.blob();
  }

  async deleteSession(sessionId: string): Promise<void> {
    await check(await fetch(`${this.baseUrl}/sessions/${sessionId}`, { method: "DELETE" }));
  }
}
