// Pressure sources for the sketch pad. Hardware stylus pressure is used when
// present; otherwise the user can pick an on-screen slider or a speed-derived
// pseudo-pressure (slow strokes press harder). The speed mapping is a demo
// convenience for pressure-less hardware, not a capture of real pen force.

export type PressureMode = "stylus" | "slider" | "speed" | "fixed";

export const FIXED_FALLBACK_PRESSURE = 0.5;

export interface PointerLike {
  pointerType: string;
  pressure: number;
}

/** Inverse-speed pseudo-pressure: 1 at rest, falling toward 0 as the pointer
 * speeds up. refSpeed is the px/ms at which pressure halves. */
export function speedPseudoPressure(
  distancePx: number,
  dtMs: number,
  refSpeed = 0.6,
): number {
  if (dtMs <= 0) return 1;
  const speed = distancePx / dtMs;
  return 1 / (1 + speed / refSpeed);
}

export interface ResolvedPressure {
  pressure: number;
  /** True when the value came from a real pressure sensor. */
  hardware: boolean;
  /** True when the configured source is unavailable and the fixed fallback
   * was used (the UI shows a warning banner). */
  degraded: boolean;
}

export function resolvePressure(
  mode: PressureMode,
  event: PointerLike,
  sliderValue: number,
  speedPressure: number,
): ResolvedPressure {
  switch (mode) {
    case "stylus":
      if (event.pointerType === "pen") {
        return { pressure: event.pressure, hardware: true, degraded: false };
      }
      return { pressure: FIXED_FALLBACK_PRESSURE, hardware: false, degraded: true };
    case "slider":
      return { pressure: sliderValue, hardware: false, degraded: false };
    case "speed":
      return { pressure: speedPressure, hardware: false, degraded: false };
    case "fixed":
      return { pressure: FIXED_FALLBACK_PRESSURE, hardware: false, degraded: false };
  }
}
