// Sketch pad wiring: draw a pressure stroke, watch the live variable-width
// ink, submit it to the engine, and inspect the classification, the profile
// chart, and the 3D curves. At most one submission renders at a time; a newer
// stroke supersedes any response still in flight.

import { fetchHealth, processStroke, ProcessResponse, ServiceError } from "./api.js";
import { drawProfileChart, ChartSeries } from "./chart.js";
import { PressureMode, resolvePressure, speedPseudoPressure } from "./pressure.js";
import { drawRibbonSegment } from "./ribbon.js";
import { buildPayload, StrokeRecorder, UiSample } from "./stroke.js";
import { OrbitViewer } from "./viewer3d.js";

const BASE_URL = "";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

const sketchCanvas = byId<HTMLCanvasElement>("sketch");
const chartCanvas = byId<HTMLCanvasElement>("chart");
const viewerCanvas = byId<HTMLCanvasElement>("viewer");
const modeSelect = byId<HTMLSelectElement>("pressure-mode");
const slider = byId<HTMLInputElement>("pressure-slider");
const sliderValue = byId<HTMLSpanElement>("slider-value");
const smoothSelect = byId<HTMLSelectElement>("smooth-method");
const banner = byId<HTMLDivElement>("banner");
const toast = byId<HTMLDivElement>("toast");
const classLabel = byId<HTMLDivElement>("class-label");
const scoresLabel = byId<HTMLDivElement>("scores");
const stagesBox = byId<HTMLDivElement>("stages");
const statusLabel = byId<HTMLSpanElement>("status");
const clearButton = byId<HTMLButtonElement>("clear");
const resubmitButton = byId<HTMLButtonElement>("resubmit");

const ctx = sketchCanvas.getContext("2d")!;
const viewer = new OrbitViewer(viewerCanvas);
const recorder = new StrokeRecorder();

let drawing = false;
let lastSample: UiSample | null = null;
let lastMove: { x: number; y: number; t: number } | null = null;
let submissionCounter = 0;
let lastResponse: ProcessResponse | null = null;
let stageVisibility = new Map<string, boolean>();

function pressureMode(): PressureMode {
  return modeSelect.value as PressureMode;
}

function showBanner(message: string): void {
  banner.textContent = message;
  banner.hidden = false;
}

function hideBanner(): void {
  banner.hidden = true;
}

function showToast(message: string): void {
  toast.textContent = message;
  toast.hidden = false;
  setTimeout(() => {
    toast.hidden = true;
  }, 4000);
}

function clearSketch(): void {
  ctx.clearRect(0, 0, sketchCanvas.width, sketchCanvas.height);
  recorder.reset();
  lastSample = null;
  lastMove = null;
}

function canvasPoint(e: PointerEvent): { x: number; y: number } {
  const rect = sketchCanvas.getBoundingClientRect();
  return {
    x: ((e.clientX - rect.left) * sketchCanvas.width) / rect.width,
    y: ((e.clientY - rect.top) * sketchCanvas.height) / rect.height,
  };
}

function samplePressure(e: PointerEvent, x: number, y: number): number {
  let speedP = 1;
  if (lastMove) {
    const dist = Math.hypot(x - lastMove.x, y - lastMove.y);
    speedP = speedPseudoPressure(dist, e.timeStamp - lastMove.t);
  }
  const resolved = resolvePressure(pressureMode(), e, Number(slider.value), speedP);
  if (resolved.degraded) {
    showBanner("No stylus pressure detected: drawing with fixed width. "
      + "Pick the slider or speed source for variable pressure.");
  }
  return resolved.pressure;
}

function addPoint(e: PointerEvent): void {
  const { x, y } = canvasPoint(e);
  const p = samplePressure(e, x, y);
  const sample = recorder.add(x, y, p, e.timeStamp);
  if (lastSample) drawRibbonSegment(ctx, lastSample, sample);
  lastSample = sample;
  lastMove = { x, y, t: e.timeStamp };
}

sketchCanvas.addEventListener("pointerdown", (e) => {
  e.preventDefault();
  drawing = true;
  hideBanner();
  clearSketch();
  sketchCanvas.setPointerCapture(e.pointerId);
  addPoint(e);
});

sketchCanvas.addEventListener("pointermove", (e) => {
  if (!drawing) return;
  e.preventDefault();
  const coalesced = typeof e.getCoalescedEvents === "function"
    ? e.getCoalescedEvents()
    : [];
  for (const ev of coalesced.length ? coalesced : [e]) {
    addPoint(ev as PointerEvent);
  }
});

function endStroke(e: PointerEvent): void {
  if (!drawing) return;
  drawing = false;
  addPoint(e);
  if (recorder.length >= 2) void submit();
}

sketchCanvas.addEventListener("pointerup", endStroke);
sketchCanvas.addEventListener("pointercancel", () => {
  drawing = false;
});

slider.addEventListener("input", () => {
  sliderValue.textContent = Number(slider.value).toFixed(2);
});

modeSelect.addEventListener("change", hideBanner);
clearButton.addEventListener("click", () => {
  clearSketch();
});
resubmitButton.addEventListener("click", () => {
  if (recorder.length >= 2) void submit();
});

async function submit(): Promise<void> {
  const id = ++submissionCounter;
  const options: { trace: boolean; smooth?: string } = { trace: true };
  if (smoothSelect.value !== "auto") options.smooth = smoothSelect.value;
  const body = buildPayload(recorder.points, options);
  statusLabel.textContent = "processing...";
  try {
    const response = await processStroke(BASE_URL, body);
    if (id !== submissionCounter) return; // superseded by a newer stroke
    lastResponse = response;
    statusLabel.textContent = "";
    renderResult(response);
  } catch (err) {
    if (id !== submissionCounter) return;
    statusLabel.textContent = "";
    const message = err instanceof ServiceError
      ? `service rejected the stroke: ${err.code}`
      : "service unreachable; the sketch is kept for resubmission";
    showToast(message);
  }
}

function renderResult(response: ProcessResponse): void {
  classLabel.textContent = response.class;
  scoresLabel.textContent = ["spiral", "forward", "backward"]
    .map((label, i) => `${label} ${response.scores[i].toFixed(3)}`)
    .join("  ");

  const known = new Set((response.trace ?? []).map((entry) => entry.stage));
  for (const stage of Array.from(stageVisibility.keys())) {
    if (!known.has(stage)) stageVisibility.delete(stage);
  }
  stagesBox.replaceChildren();
  for (const entry of response.trace ?? []) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = stageVisibility.get(entry.stage) ?? false;
    box.addEventListener("change", () => {
      stageVisibility.set(entry.stage, box.checked);
      renderChart();
    });
    label.append(box, ` ${entry.stage}`);
    stagesBox.append(label);
  }

  renderChart();
  viewer.setCurves([
    { points: response.curve3d, color: "#457b9d", width: 1.5 },
    { points: response.smoothed, color: "#e63946", width: 2 },
  ]);
}

function renderChart(): void {
  if (!lastResponse) return;
  const series: ChartSeries[] = [];
  for (const entry of lastResponse.trace ?? []) {
    if (stageVisibility.get(entry.stage)) {
      series.push({ values: entry.profile, color: "#9aa3af", width: 1 });
    }
  }
  // raw in blue under, processed in red on top
  series.push({ values: lastResponse.profile_raw, color: "#1d4ed8", width: 1.5 });
  series.push({ values: lastResponse.profile_processed, color: "#dc2626", width: 2 });
  drawProfileChart(chartCanvas, series);
}

void fetchHealth(BASE_URL)
  .then((health) => {
    statusLabel.textContent = `model ${health.model_topology.join(":")}`;
  })
  .catch(() => {
    showToast("service unreachable; start it with: depthstroke serve --model model.json");
  });
