/**
 * Typed client for the solver's HTTP API.  All numbers are radians;
 * conversion to degrees happens only in display code.
 */

import type { CurveDoc, Point, SolutionRecord } from "./geometry.js";

export interface ValidityReport {
  is_immersed: boolean;
  min_speed: number;
  is_simple: boolean;
  first_crossing: [number, number] | null;
}

export interface FitResponse {
  curve: CurveDoc;
  report: ValidityReport;
  deviation: number;
}

export interface SolveResponse {
  mode: string;
  curve: CurveDoc;
  solutions: SolutionRecord[];
  warnings: string[];
}

export interface SweepResponse {
  mode: string;
  curve: CurveDoc;
  sweep: {
    phis: number[];
    entries: SolutionRecord[][];
    links: [number, number][][];
  };
  warnings: string[];
}

export interface PresetInfo {
  name: string;
  curve: CurveDoc;
  diameter: number;
}

export class ApiError extends Error {
  constructor(
    readonly code: string,
    message: string,
    readonly status: number,
    readonly detail: unknown = null,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(
  base: string,
  path: string,
  init: RequestInit,
  check: (body: unknown) => T,
): Promise<T> {
  const response = await fetch(base + path, init);
  let body: unknown = null;
  try {
    body = await response.json();
  } catch {
    throw new ApiError("BadResponse", `non-JSON response from ${path}`, response.status);
  }
  if (!response.ok) {
    const err = body as { code?: string; message?: string; detail?: unknown };
    throw new ApiError(
      err?.code ?? "HttpError",
      err?.message ?? `request to ${path} failed`,
      response.status,
      err?.detail ?? null,
    );
  }
  return check(body);
}

function post<T>(
  base: string,
  path: string,
  payload: unknown,
  check: (body: unknown) => T,
  signal?: AbortSignal,
): Promise<T> {
  return request(base, path, {
    method: "POST",
    headers: { "content-type": "application/json" },
    body: JSON.stringify(payload),
    signal,
  }, check);
}

function bad(path: string): never {
  throw new ApiError("BadResponse", `malformed response from ${path}`, 200);
}

function checkCurve(doc: unknown): CurveDoc {
  const d = doc as CurveDoc;
  if (!d || d.type !== "fourier" || !Array.isArray(d.coeffs)) bad("curve");
  return d;
}

function checkSolutions(list: unknown): SolutionRecord[] {
  if (!Array.isArray(list)) bad("solutions");
  for (const rec of list as SolutionRecord[]) {
    if (!Array.isArray(rec.vertices) || rec.vertices.length !== 4) bad("solutions");
    if (typeof rec.phi !== "number" || typeof rec.half_diag !== "number") bad("solutions");
  }
  return list as SolutionRecord[];
}

export class SolverClient {
  constructor(readonly base: string = "") {}

  fitStroke(points: Point[], cutoff?: number, signal?: AbortSignal): Promise<FitResponse> {
    const payload: Record<string, unknown> = { points };
    if (cutoff !== undefined) payload.cutoff = cutoff;
    return post(this.base, "/api/fit", payload, (body) => {
      const b = body as FitResponse;
      if (!b || typeof b.deviation !== "number" || !b.report) bad("/api/fit");
      checkCurve(b.curve);
      return b;
    }, signal);
  }

  solve(curve: CurveDoc, phi: number, signal?: AbortSignal): Promise<SolveResponse> {
    return post(this.base, "/api/solve", { curve, phi }, (body) => {
      const b = body as SolveResponse;
      checkSolutions(b?.solutions);
      return b;
    }, signal);
  }

  sweep(
    curve: CurveDoc,
    phiLo: number,
    phiHi: number,
    steps: number,
    signal?: AbortSignal,
  ): Promise<SweepResponse> {
    return post(
      this.base,
      "/api/sweep",
      { curve, phi_lo: phiLo, phi_hi: phiHi, steps },
      (body) => {
        const b = body as SweepResponse;
        if (!b?.sweep || !Array.isArray(b.sweep.phis) || !Array.isArray(b.sweep.entries)) {
          bad("/api/sweep");
        }
        b.sweep.entries.forEach(checkSolutions);
        return b;
      },
      signal,
    );
  }

  presets(): Promise<PresetInfo[]> {
    return request(this.base, "/api/presets", { method: "GET" }, (body) => {
      const b = body as { presets: PresetInfo[] };
      if (!Array.isArray(b?.presets)) bad("/api/presets");
      b.presets.forEach((p) => checkCurve(p.curve));
      return b.presets;
    });
  }
}
