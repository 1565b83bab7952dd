/**
 * Canvas drawing: the curve, solved rectangles with their diagonals
 * and angle label, the sweep overlay with branch links, stroke echo,
 * and the self-crossing marker.
 */

import { formatDegrees, type Point, type SolutionRecord } from "./geometry.js";

export interface Viewport {
  scale: number;
  cx: number;
  cy: number;
  width: number;
  height: number;
}

export function fitViewport(points: Point[], width: number, height: number): Viewport {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const [x, y] of points) {
    xMin = Math.min(xMin, x);
    xMax = Math.max(xMax, x);
    yMin = Math.min(yMin, y);
    yMax = Math.max(yMax, y);
  }
  const span = Math.max(xMax - xMin, yMax - yMin, 1e-9);
  return {
    scale: (0.82 * Math.min(width, height)) / span,
    cx: (xMin + xMax) / 2,
    cy: (yMin + yMax) / 2,
    width,
    height,
  };
}

export function toScreen(v: Viewport, p: Point): Point {
  return [
    v.width / 2 + (p[0] - v.cx) * v.scale,
    v.height / 2 - (p[1] - v.cy) * v.scale,
  ];
}

export function toWorld(v: Viewport, px: number, py: number): Point {
  return [(px - v.width / 2) / v.scale + v.cx, (v.height / 2 - py) / v.scale + v.cy];
}

function tracePath(ctx: CanvasRenderingContext2D, v: Viewport, pts: Point[], close: boolean): void {
  ctx.beginPath();
  pts.forEach((p, i) => {
    const [x, y] = toScreen(v, p);
    if (i === 0) ctx.moveTo(x, y);
    else ctx.lineTo(x, y);
  });
  if (close) ctx.closePath();
}

export function drawCurve(ctx: CanvasRenderingContext2D, v: Viewport, pts: Point[]): void {
  tracePath(ctx, v, pts, true);
  ctx.strokeStyle = "#2b6cb0";
  ctx.lineWidth = 2;
  ctx.stroke();
}

export function drawStroke(ctx: CanvasRenderingContext2D, v: Viewport, pts: Point[]): void {
  if (pts.length < 2) return;
  tracePath(ctx, v, pts, false);
  ctx.strokeStyle = "#a0aec0";
  ctx.setLineDash([5, 4]);
  ctx.lineWidth = 1.5;
  ctx.stroke();
  ctx.setLineDash([]);
}

export function drawRectangle(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  sol: SolutionRecord,
  options: { faint?: boolean; labelAngle?: boolean } = {},
): void {
  const alpha = options.faint ? 0.25 : 1.0;
  const verts = sol.vertices;
  tracePath(ctx, v, verts, true);
  ctx.strokeStyle = `rgba(197, 48, 48, ${alpha})`;
  ctx.lineWidth = options.faint ? 1 : 2;
  ctx.stroke();

  // diagonals of the vertex cycle: (v0, v2) and (v1, v3)
  ctx.strokeStyle = `rgba(221, 107, 32, ${alpha})`;
  ctx.lineWidth = 1;
  for (const [a, b] of [[0, 2], [1, 3]] as const) {
    ctx.beginPath();
    ctx.moveTo(...toScreen(v, verts[a] as Point));
    ctx.lineTo(...toScreen(v, verts[b] as Point));
    ctx.stroke();
  }

  for (const p of verts) {
    const [x, y] = toScreen(v, p);
    ctx.beginPath();
    ctx.arc(x, y, options.faint ? 2 : 3.5, 0, 2 * Math.PI);
    ctx.fillStyle = `rgba(197, 48, 48, ${alpha})`;
    ctx.fill();
  }

  if (options.labelAngle !== false && !options.faint) {
    const [x, y] = toScreen(v, sol.center);
    ctx.fillStyle = "#1a202c";
    ctx.font = "13px system-ui, sans-serif";
    ctx.fillText(formatDegrees(sol.phi), x + 6, y - 6);
  }
}

export function drawCrossingMarker(ctx: CanvasRenderingContext2D, v: Viewport, p: Point): void {
  const [x, y] = toScreen(v, p);
  ctx.strokeStyle = "#c53030";
  ctx.lineWidth = 2.5;
  ctx.beginPath();
  ctx.arc(x, y, 9, 0, 2 * Math.PI);
  ctx.stroke();
  ctx.beginPath();
  ctx.moveTo(x - 6, y - 6);
  ctx.lineTo(x + 6, y + 6);
  ctx.moveTo(x - 6, y + 6);
  ctx.lineTo(x + 6, y - 6);
  ctx.stroke();
}

/**
 * The sweep overlay: every step's rectangles drawn faint, and branch
 * links drawn as segments between the centers of linked rectangles in
 * consecutive steps.
 */
export function drawSweepOverlay(
  ctx: CanvasRenderingContext2D,
  v: Viewport,
  entries: SolutionRecord[][],
  links: [number, number][][],
): void {
  for (const entry of entries) {
    for (const sol of entry) drawRectangle(ctx, v, sol, { faint: true });
  }
  ctx.strokeStyle = "rgba(49, 130, 206, 0.6)";
  ctx.lineWidth = 1;
  links.forEach((step, k) => {
    const from = entries[k];
    const to = entries[k + 1];
    if (!from || !to) return;
    for (const [i, j] of step) {
      const a = from[i];
      const b = to[j];
      if (!a || !b) continue;
      ctx.beginPath();
      ctx.moveTo(...toScreen(v, a.center));
      ctx.lineTo(...toScreen(v, b.center));
      ctx.stroke();
    }
  });
}

export function clear(ctx: CanvasRenderingContext2D, width: number, height: number): void {
  ctx.clearRect(0, 0, width, height);
}
