/**
 * Client-side geometry: curve evaluation for rendering and an
 * independent rectangle check so nothing from the wire is drawn
 * untested.
 */

export type Point = [number, number];

/** One trigonometric coefficient row: harmonic index, real, imaginary. */
export type CoeffRow = [number, number, number];

export interface CurveDoc {
  type: "fourier";
  n: number;
  coeffs: CoeffRow[];
}

export interface SolutionRecord {
  params: number[];
  center: Point;
  half_diag: number;
  theta: number;
  phi: number;
  vertices: Point[];
  residual_norm: number;
}

/** gamma(s) = sum over rows (re + i im) e^{iks}. */
export function evaluateCurve(doc: CurveDoc, s: number): Point {
  let x = 0;
  let y = 0;
  for (const [k, re, im] of doc.coeffs) {
    const c = Math.cos(k * s);
    const si = Math.sin(k * s);
    x += re * c - im * si;
    y += re * si + im * c;
  }
  return [x, y];
}

export function sampleCurve(doc: CurveDoc, count = 512): Point[] {
  const pts: Point[] = [];
  for (let i = 0; i < count; i++) {
    pts.push(evaluateCurve(doc, (2 * Math.PI * i) / count));
  }
  return pts;
}

function sub(a: Point, b: Point): Point {
  return [a[0] - b[0], a[1] - b[1]];
}

function norm(a: Point): number {
  return Math.hypot(a[0], a[1]);
}

/**
 * True if the four vertices (in cycle order) form a rectangle whose
 * diagonals cross at the acute angle of phi, within tol: shared
 * diagonal midpoint, equal diagonal lengths, matching crossing angle.
 */
export function verifyRectangle(vertices: Point[], phi: number, tol: number): boolean {
  if (vertices.length !== 4) return false;
  const [v0, v1, v2, v3] = vertices as [Point, Point, Point, Point];
  const d1 = sub(v0, v2);
  const d2 = sub(v1, v3);
  if (norm(d1) === 0 || norm(d2) === 0) return false;

  const midGap = norm([
    (v0[0] + v2[0]) / 2 - (v1[0] + v3[0]) / 2,
    (v0[1] + v2[1]) / 2 - (v1[1] + v3[1]) / 2,
  ]);
  const lenGap = Math.abs(norm(d1) - norm(d2));

  let delta = (Math.atan2(d1[1], d1[0]) - Math.atan2(d2[1], d2[0])) % Math.PI;
  if (delta < 0) delta += Math.PI;
  const acute = Math.min(delta, Math.PI - delta);
  const target = Math.min(phi, Math.PI - phi);

  return midGap <= tol && lenGap <= tol && Math.abs(acute - target) <= tol;
}

export function degrees(radians: number): number {
  return (radians * 180) / Math.PI;
}

export function formatDegrees(radians: number): string {
  return `${degrees(radians).toFixed(1)}°`;
}
