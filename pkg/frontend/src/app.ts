/**
 * Explorer wiring: preset picker, freehand stroke input, angle slider
 * with debounced live solving, sweep overlay, and error banners.
 */

import { ApiError, SolverClient, type SweepResponse } from "./api.js";
import {
  evaluateCurve,
  formatDegrees,
  sampleCurve,
  verifyRectangle,
  type CurveDoc,
  type Point,
  type SolutionRecord,
} from "./geometry.js";
import {
  clear,
  drawCrossingMarker,
  drawCurve,
  drawRectangle,
  drawStroke,
  drawSweepOverlay,
  fitViewport,
  toWorld,
  type Viewport,
} from "./render.js";
import { LiveScheduler, type Outcome } from "./scheduler.js";

const VERIFY_TOL = 1e-6;
const PHI_MIN = Math.PI / 48;
const PHI_MAX = Math.PI / 2;

interface State {
  curve: CurveDoc | null;
  curvePts: Point[];
  phi: number;
  solutions: SolutionRecord[];
  sweep: SweepResponse["sweep"] | null;
  stroke: Point[];
  crossing: Point | null;
  solveEnabled: boolean;
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

export function startApp(): void {
  const canvas = el<HTMLCanvasElement>("view");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("canvas 2d context unavailable");

  const presetSelect = el<HTMLSelectElement>("preset");
  const slider = el<HTMLInputElement>("phi");
  const phiLabel = el<HTMLSpanElement>("phi-label");
  const banner = el<HTMLDivElement>("banner");
  const status = el<HTMLDivElement>("status");
  const sweepButton = el<HTMLButtonElement>("sweep");
  const clearButton = el<HTMLButtonElement>("clear-sweep");

  const client = new SolverClient("");
  const state: State = {
    curve: null,
    curvePts: [],
    phi: PHI_MAX,
    solutions: [],
    sweep: null,
    stroke: [],
    crossing: null,
    solveEnabled: true,
  };

  let viewport: Viewport = fitViewport([[-1, -1], [1, 1]], canvas.width, canvas.height);

  function redraw(): void {
    clear(ctx!, canvas.width, canvas.height);
    const frame: Point[] = state.curvePts.length ? state.curvePts : state.stroke;
    if (frame.length) viewport = fitViewport(frame, canvas.width, canvas.height);
    if (state.stroke.length) drawStroke(ctx!, viewport, state.stroke);
    if (state.curvePts.length) drawCurve(ctx!, viewport, state.curvePts);
    if (state.sweep) drawSweepOverlay(ctx!, viewport, state.sweep.entries, state.sweep.links);
    for (const sol of state.solutions) drawRectangle(ctx!, viewport, sol);
    if (state.crossing) drawCrossingMarker(ctx!, viewport, state.crossing);
  }

  function showBanner(text: string | null): void {
    banner.textContent = text ?? "";
    banner.hidden = !text;
  }

  function setStatus(text: string): void {
    status.textContent = text;
  }

  // --- live solving -------------------------------------------------

  const scheduler = new LiveScheduler<{ curve: CurveDoc; phi: number }, SolutionRecord[]>(
    async ({ curve, phi }) => (await client.solve(curve, phi)).solutions,
    (outcome) => renderSolveOutcome(outcome),
    100,
  );

  function renderSolveOutcome(outcome: Outcome<SolutionRecord[]>): void {
    if (outcome.error) {
      state.solutions = [];
      const err = outcome.error;
      if (err instanceof ApiError && err.code === "NoSolutionFound") {
        showBanner(`No rectangle found at ${formatDegrees(state.phi)}.`);
      } else if (err instanceof ApiError) {
        showBanner(`${err.code}: ${err.message}`);
      } else {
        showBanner(String(err));
      }
      redraw();
      return;
    }
    const all = outcome.result ?? [];
    // never draw wire data unchecked: recompute the rectangle test here
    state.solutions = all.filter((s) => verifyRectangle(s.vertices, s.phi, VERIFY_TOL));
    const dropped = all.length - state.solutions.length;
    showBanner(dropped > 0 ? `${dropped} result(s) failed the client-side check.` : null);
    setStatus(
      `${state.solutions.length} rectangle(s) at ${formatDegrees(state.phi)}` +
        (state.solutions.length
          ? `; half-diagonals ${state.solutions.map((s) => s.half_diag.toFixed(4)).join(", ")}`
          : ""),
    );
    redraw();
  }

  function requestSolve(): void {
    if (!state.curve || !state.solveEnabled) return;
    scheduler.request({ curve: state.curve, phi: state.phi });
  }

  // --- curve sources ------------------------------------------------

  function adoptCurve(doc: CurveDoc, label: string): void {
    state.curve = doc;
    state.curvePts = sampleCurve(doc);
    state.sweep = null;
    state.crossing = null;
    state.solveEnabled = true;
    slider.disabled = false;
    sweepButton.disabled = false;
    showBanner(null);
    setStatus(label);
    redraw();
    requestSolve();
  }

  async function loadPresets(): Promise<void> {
    const presets = await client.presets();
    presetSelect.innerHTML = "";
    for (const p of presets) {
      const option = document.createElement("option");
      option.value = p.name;
      option.textContent = p.name;
      presetSelect.appendChild(option);
    }
    presetSelect.value = "circle";
    const circle = presets.find((p) => p.name === "circle");
    if (circle) adoptCurve(circle.curve, "preset: circle");
    presetSelect.addEventListener("change", () => {
      const chosen = presets.find((p) => p.name === presetSelect.value);
      if (chosen) {
        state.stroke = [];
        adoptCurve(chosen.curve, `preset: ${chosen.name}`);
      }
    });
  }

  // --- freehand stroke ----------------------------------------------

  let drawing = false;

  canvas.addEventListener("pointerdown", (ev) => {
    drawing = true;
    state.stroke = [toWorld(viewport, ev.offsetX, ev.offsetY)];
    canvas.setPointerCapture(ev.pointerId);
  });

  canvas.addEventListener("pointermove", (ev) => {
    if (!drawing) return;
    const p = toWorld(viewport, ev.offsetX, ev.offsetY);
    const last = state.stroke[state.stroke.length - 1];
    if (!last || Math.hypot(p[0] - last[0], p[1] - last[1]) * viewport.scale > 3) {
      state.stroke.push(p);
      redraw();
    }
  });

  canvas.addEventListener("pointerup", async () => {
    if (!drawing) return;
    drawing = false;
    if (!state.stroke.length) return;
    try {
      const fit = await client.fitStroke(state.stroke);
      state.curve = fit.curve;
      state.curvePts = sampleCurve(fit.curve);
      state.sweep = null;
      if (!fit.report.is_simple && fit.report.first_crossing) {
        // mark where the fitted loop crosses itself and refuse to solve
        state.crossing = evaluateCurve(fit.curve, fit.report.first_crossing[0]);
        state.solveEnabled = false;
        state.solutions = [];
        slider.disabled = true;
        sweepButton.disabled = true;
        showBanner("The stroke crosses itself; solving is disabled.");
      } else {
        state.crossing = null;
        state.solveEnabled = true;
        slider.disabled = false;
        sweepButton.disabled = false;
        showBanner(null);
        setStatus(`fitted stroke (deviation ${fit.deviation.toExponential(2)})`);
        requestSolve();
      }
      redraw();
    } catch (err) {
      if (err instanceof ApiError) {
        showBanner(
          err.code === "TooFewPoints"
            ? "Stroke too short to fit a curve; keep drawing."
            : `${err.code}: ${err.message}`,
        );
      } else {
        showBanner(String(err));
      }
    }
  });

  // --- controls -----------------------------------------------------

  function syncSlider(): void {
    state.phi = Number(slider.value);
    phiLabel.textContent = formatDegrees(state.phi);
  }

  slider.min = String(PHI_MIN);
  slider.max = String(PHI_MAX);
  slider.step = "0.001";
  slider.value = String(PHI_MAX);
  syncSlider();

  slider.addEventListener("input", () => {
    syncSlider();
    requestSolve();
  });

  sweepButton.addEventListener("click", async () => {
    if (!state.curve || !state.solveEnabled) return;
    sweepButton.disabled = true;
    setStatus("sweeping…");
    try {
      const res = await client.sweep(state.curve, Math.PI / 6, PHI_MAX, 16);
      state.sweep = res.sweep;
      setStatus(
        `sweep ${formatDegrees(Math.PI / 6)} → ${formatDegrees(PHI_MAX)}: ` +
          `${res.sweep.entries.reduce((n, e) => n + e.length, 0)} rectangles`,
      );
      redraw();
    } catch (err) {
      showBanner(err instanceof ApiError ? `${err.code}: ${err.message}` : String(err));
    } finally {
      sweepButton.disabled = false;
    }
  });

  clearButton.addEventListener("click", () => {
    state.sweep = null;
    redraw();
  });

  loadPresets().catch((err) => showBanner(`failed to load presets: ${err}`));
}

startApp();
