// Minimal orbitable polyline viewer: yaw/pitch rotation around the curve
// centroid, orthographic projection onto the canvas. The viewer draws exactly
// the point sequences it is given; nothing is resampled or smoothed here.

export type Point3 = readonly [number, number, number];

export interface Orbit {
  yaw: number;
  pitch: number;
  zoom: number;
}

export function rotatePoint(p: Point3, yaw: number, pitch: number): [number, number, number] {
  const [x, y, z] = p;
  // yaw about the y axis, then pitch about the x axis
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const x1 = cy * x + sy * z;
  const z1 = -sy * x + cy * z;
  const cp = Math.cos(pitch);
  const sp = Math.sin(pitch);
  const y2 = cp * y - sp * z1;
  const z2 = sp * y + cp * z1;
  return [x1, y2, z2];
}

export function centroid(curves: readonly Point3[][]): [number, number, number] {
  let sx = 0;
  let sy = 0;
  let sz = 0;
  let n = 0;
  for (const curve of curves) {
    for (const [x, y, z] of curve) {
      sx += x;
      sy += y;
      sz += z;
      n += 1;
    }
  }
  return n ? [sx / n, sy / n, sz / n] : [0, 0, 0];
}

export interface ViewTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit the rotated curves into width x height with a margin. */
export function fitTransform(
  rotated: readonly [number, number, number][][],
  width: number,
  height: number,
  margin = 20,
): ViewTransform {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const curve of rotated) {
    for (const [x, y] of curve) {
      if (x < minX) minX = x;
      if (x > maxX) maxX = x;
      if (y < minY) minY = y;
      if (y > maxY) maxY = y;
    }
  }
  if (!Number.isFinite(minX) || maxX === minX || maxY === minY) {
    const spanX = maxX > minX ? maxX - minX : 1;
    const spanY = maxY > minY ? maxY - minY : 1;
    const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
    return {
      scale,
      offsetX: width / 2 - (Number.isFinite(minX) ? ((minX + maxX) / 2) * scale : 0),
      offsetY: height / 2 - (Number.isFinite(minY) ? ((minY + maxY) / 2) * scale : 0),
    };
  }
  const scale = Math.min((width - 2 * margin) / (maxX - minX), (height - 2 * margin) / (maxY - minY));
  return {
    scale,
    offsetX: width / 2 - ((minX + maxX) / 2) * scale,
    offsetY: height / 2 - ((minY + maxY) / 2) * scale,
  };
}

export function projectCurve(
  curve: readonly Point3[],
  center: Point3,
  orbit: Orbit,
): [number, number, number][] {
  return curve.map((p) => {
    const shifted: Point3 = [p[0] - center[0], p[1] - center[1], p[2] - center[2]];
    const r = rotatePoint(shifted, orbit.yaw, orbit.pitch);
    return [r[0] * orbit.zoom, r[1] * orbit.zoom, r[2] * orbit.zoom];
  });
}

export interface CurveStyle {
  points: Point3[];
  color: string;
  width: number;
}

export class OrbitViewer {
  orbit: Orbit = { yaw: 0.6, pitch: -0.4, zoom: 1 };
  private curves: CurveStyle[] = [];
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(private canvas: HTMLCanvasElement) {
    canvas.addEventListener("pointerdown", (e) => {
      this.dragging = true;
      this.lastX = e.clientX;
      this.lastY = e.clientY;
      canvas.setPointerCapture(e.pointerId);
    });
    canvas.addEventListener("pointermove", (e) => {
      if (!this.dragging) return;
      this.orbit.yaw += (e.clientX - this.lastX) * 0.01;
      this.orbit.pitch += (e.clientY - this.lastY) * 0.01;
      this.orbit.pitch = Math.max(-1.5, Math.min(1.5, this.orbit.pitch));
      this.lastX = e.clientX;
      this.lastY = e.clientY;
      this.render();
    });
    const stop = () => {
      this.dragging = false;
    };
    canvas.addEventListener("pointerup", stop);
    canvas.addEventListener("pointercancel", stop);
    canvas.addEventListener("wheel", (e) => {
      e.preventDefault();
      this.orbit.zoom *= e.deltaY < 0 ? 1.1 : 1 / 1.1;
      this.render();
    }, { passive: false });
  }

  setCurves(curves: CurveStyle[]): void {
    this.curves = curves;
    this.render();
  }

  render(): void {
    const ctx = this.canvas.getContext("2d");
    if (!ctx) return;
    const { width, height } = this.canvas;
    ctx.clearRect(0, 0, width, height);
    if (!this.curves.length) return;
    const center = centroid(this.curves.map((c) => c.points));
    const rotated = this.curves.map((c) => projectCurve(c.points, center, this.orbit));
    const view = fitTransform(rotated, width, height);
    for (let i = 0; i < rotated.length; i++) {
      const pts = rotated[i];
      if (pts.length < 2) continue;
      ctx.strokeStyle = this.curves[i].color;
      ctx.lineWidth = this.curves[i].width;
      ctx.lineJoin = "round";
      ctx.beginPath();
      for (let j = 0; j < pts.length; j++) {
        const px = pts[j][0] * view.scale + view.offsetX;
        const py = pts[j][1] * view.scale + view.offsetY;
        if (j === 0) ctx.moveTo(px, py);
        else ctx.lineTo(px, py);
      }
      ctx.stroke();
    }
  }
}
