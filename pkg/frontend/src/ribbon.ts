// Variable-width ink: the ribbon half-width is a strictly increasing function
// of pressure, so harder presses always draw visibly thicker strokes.

import type { UiSample } from "./stroke.js";

export const MIN_HALF_WIDTH = 0.75;
export const MAX_HALF_WIDTH = 14;

export function ribbonHalfWidth(
  pressure: number,
  minHalf = MIN_HALF_WIDTH,
  maxHalf = MAX_HALF_WIDTH,
): number {
  return minHalf + (maxHalf - minHalf) * pressure;
}

/** Draw the newest segment of an in-progress stroke; called per input event. */
export function drawRibbonSegment(
  ctx: CanvasRenderingContext2D,
  from: UiSample,
  to: UiSample,
  color = "#1d3557",
): void {
  const width = ribbonHalfWidth((from.p + to.p) / 2) * 2;
  ctx.strokeStyle = color;
  ctx.lineCap = "round";
  ctx.lineJoin = "round";
  ctx.lineWidth = width;
  ctx.beginPath();
  ctx.moveTo(from.x, from.y);
  ctx.lineTo(to.x, to.y);
  ctx.stroke();
}

/** Redraw a whole stroke (used after canvas resize or reload). */
export function drawRibbon(
  ctx: CanvasRenderingContext2D,
  samples: readonly UiSample[],
  color = "#1d3557",
): void {
  for (let i = 1; i < samples.length; i++) {
    drawRibbonSegment(ctx, samples[i - 1], samples[i], color);
  }
}
