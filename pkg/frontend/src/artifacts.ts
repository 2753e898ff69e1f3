/**
 * Readers for the run artifacts emitted by the frontier solver:
 * h_series.csv, fit_report.json, snapshots.jsonl, steady_profile.csv.
 *
 * This package is read-only over those files; every fitted quantity is
 * taken from fit_report.json, never recomputed.
 */

import { existsSync, readFileSync } from "fs";
import { join } from "path";
import Papa from "papaparse";

export interface HPoint {
  t: number;
  h: number;
}

export interface RateLawDict {
  form: "linear" | "power_log" | "linear_log_pow" | "linear_log_log" | "exp_power";
  p: number;
  q: number;
}

export interface CandidateDiag {
  law: RateLawDict;
  label: string;
  C_hat: number;
  flatness: number;
  trend_slope: number;
}

export interface FitReport {
  law: RateLawDict;
  label: string;
  C_hat: number;
  flatness: number;
  window: [number, number];
  rms_resid: number;
  slope_diag: [number, number][];
  candidates: CandidateDiag[];
  ambiguous: string[];
}

export interface Snapshot {
  t: number;
  h: number;
  dx: number;
  u: number[];
  v: number[];
}

export interface SteadyProfile {
  x: number[];
  U: number[];
  V: number[];
}

export interface RunArtifacts {
  dir: string;
  hSeries: HPoint[];
  fitReport: FitReport | null;
  snapshots: Snapshot[] | null;
  steady: SteadyProfile | null;
}

function mustExist(path: string): string {
  if (!existsSync(path)) {
    throw new Error(`missing artifact: ${path}`);
  }
  return path;
}

function parseCsv(path: string, expectedHeader: string[]): number[][] {
  const text = readFileSync(mustExist(path), "utf8");
  const parsed = Papa.parse<string[]>(text.trim(), { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    throw new Error(`${path}: ${parsed.errors[0].message}`);
  }
  const rows = parsed.data;
  const header = rows[0];
  if (header.join(",") !== expectedHeader.join(",")) {
    throw new Error(
      `${path}: expected header '${expectedHeader.join(",")}', got '${header.join(",")}'`,
    );
  }
  return rows.slice(1).map((cells, i) => {
    const nums = cells.map(Number);
    if (nums.some((x) => !Number.isFinite(x))) {
      throw new Error(`${path}: non-numeric value on data row ${i + 1}`);
    }
    return nums;
  });
}

export function readHSeries(path: string): HPoint[] {
  const rows = parseCsv(path, ["t", "h"]);
  if (rows.length < 2) {
    throw new Error(`${path}: series too short (${rows.length} rows)`);
  }
  return rows.map(([t, h]) => ({ t, h }));
}

export function readFitReport(path: string): FitReport {
  const doc = JSON.parse(readFileSync(mustExist(path), "utf8")) as FitReport;
  for (const key of ["law", "C_hat", "window", "candidates"] as const) {
    if (!(key in doc)) {
      throw new Error(`${path}: fit report missing key '${key}'`);
    }
  }
  return doc;
}

export function readSnapshots(path: string): Snapshot[] {
  const text = readFileSync(mustExist(path), "utf8");
  const out: Snapshot[] = [];
  for (const line of text.split("\n")) {
    if (line.trim() === "") continue;
    const rec = JSON.parse(line) as Snapshot;
    if (rec.u.length !== rec.v.length) {
      throw new Error(`${path}: snapshot at t=${rec.t} has mismatched u/v lengths`);
    }
    out.push(rec);
  }
  return out;
}

export function readSteadyProfile(path: string): SteadyProfile {
  const rows = parseCsv(path, ["x", "U", "V"]);
  return {
    x: rows.map((r) => r[0]),
    U: rows.map((r) => r[1]),
    V: rows.map((r) => r[2]),
  };
}

/** Load whatever artifacts a run directory holds; h_series is mandatory. */
export function loadRunDir(dir: string): RunArtifacts {
  const maybe = <T>(name: string, reader: (p: string) => T): T | null => {
    const p = join(dir, name);
    return existsSync(p) ? reader(p) : null;
  };
  return {
    dir,
    hSeries: readHSeries(join(dir, "h_series.csv")),
    fitReport: maybe("fit_report.json", readFitReport),
    snapshots: maybe("snapshots.jsonl", readSnapshots),
    steady: maybe("steady_profile.csv", readSteadyProfile),
  };
}
