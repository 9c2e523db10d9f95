// Pressure-profile chart: raw in blue, processed in red, plus optional gray
// overlays for individual pipeline stages from the service trace.

export interface ChartSeries {
  values: readonly number[];
  color: string;
  width: number;
}

export function drawProfileChart(
  canvas: HTMLCanvasElement,
  series: readonly ChartSeries[],
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  const { width, height } = canvas;
  const padding = 8;
  ctx.clearRect(0, 0, width, height);

  // unit-pressure frame
  ctx.strokeStyle = "#d0d4dc";
  ctx.lineWidth = 1;
  ctx.strokeRect(padding, padding, width - 2 * padding, height - 2 * padding);

  for (const { values, color, width: lineWidth } of series) {
    if (values.length < 2) continue;
    ctx.strokeStyle = color;
    ctx.lineWidth = lineWidth;
    ctx.beginPath();
    for (let i = 0; i < values.length; i++) {
      const x = padding + ((width - 2 * padding) * i) / (values.length - 1);
      const y = height - padding - (height - 2 * padding) * values[i];
      if (i === 0) ctx.moveTo(x, y);
      else ctx.lineTo(x, y);
    }
    ctx.stroke();
  }
}
