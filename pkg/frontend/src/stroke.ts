// Stroke capture model. The recorder accumulates samples exactly as drawn
// (after pressure clamping) and the payload builder serializes them without
// any further transformation, so the submitted body is byte-for-byte the
// captured stroke.

export interface UiSample {
  x: number;
  y: number;
  p: number;
  t: number;
}

export function clampPressure(p: number): number {
  if (Number.isNaN(p)) return 0;
  return Math.min(1, Math.max(0, p));
}

export class StrokeRecorder {
  private samples: UiSample[] = [];
  private startTime: number | null = null;
  private lastT = 0;

  get length(): number {
    return this.samples.length;
  }

  get points(): readonly UiSample[] {
    return this.samples;
  }

  reset(): void {
    this.samples = [];
    this.startTime = null;
    this.lastT = 0;
  }

  /** Append one sample; timestamps are rebased to the stroke start and kept
   * non-decreasing (coalesced pointer events can arrive out of order). */
  add(x: number, y: number, pressure: number, timeStamp: number): UiSample {
    if (this.startTime === null) this.startTime = timeStamp;
    let t = timeStamp - this.startTime;
    if (t < this.lastT) t = this.lastT;
    this.lastT = t;
    const sample: UiSample = { x, y, p: clampPressure(pressure), t };
    this.samples.push(sample);
    return sample;
  }
}

export interface PayloadOptions {
  smooth?: string;
  trace?: boolean;
}

/** The exact request body sent to /api/classify and /api/process. */
export function buildPayload(samples: readonly UiSample[], options: PayloadOptions = {}): string {
  const body: Record<string, unknown> = {
    version: 1,
    samples: samples.map((s) => ({ x: s.x, y: s.y, p: s.p, t: s.t })),
  };
  if (options.smooth !== undefined) body.smooth = options.smooth;
  if (options.trace !== undefined) body.trace = options.trace;
  return JSON.stringify(body);
}
