export interface StrokePayload {
  class_id: number;
  erase: boolean;
  brush_radius: number;
  points: [number, number][];
}

export interface SessionInfo {
  id: string;
  width: number;
  height: number;
  num_superpixels: number;
  num_classes: number;
}

export interface StrokeResponse {
  num_classes: number;
  changed: boolean;
  segmentation_url: string;
  error: string | null;
}
