/**
 * Scene builders for the three figure kinds: front trajectory with
 * fitted-law overlay, local log-slope diagnostic, and late-time profiles
 * against the steady state.  All fitted quantities come from
 * fit_report.json; the only arithmetic done here is evaluating the
 * reported law and taking the sup-gap over the bulk window.
 */

import type { FitReport, RunArtifacts, Snapshot, SteadyProfile } from "./artifacts.js";
import { appliesToLog, lawShape } from "./ratelaws.js";
import type { Panel, Scene } from "./scene.js";

const COLORS = {
  data: "#1f77b4",
  overlay: "#d62728",
  window: "#ffbf00",
  steadyU: "#333333",
  steadyV: "#888888",
  snapU: "#1f77b4",
  snapV: "#2ca02c",
  marker: "#d62728",
};

/** Overlay value C_hat * g(t) (exp(C_hat * g) for exp-power laws). */
export function overlayValue(fit: FitReport, t: number): number {
  const g = lawShape(fit.law, t);
  return appliesToLog(fit.law) ? Math.exp(fit.C_hat * g) : fit.C_hat * g;
}

/** Ratio of the observed h (or ln h) to the reported law shape. */
export function lawRatio(fit: FitReport, t: number, h: number): number {
  const y = appliesToLog(fit.law) ? Math.log(h) : h;
  return y / lawShape(fit.law, t);
}

function emptyPanel(overrides: Partial<Panel>): Panel {
  return {
    title: "",
    xLabel: "t",
    yLabel: "",
    xScale: "linear",
    yScale: "linear",
    series: [],
    bands: [],
    markers: [],
    notes: [],
    ...overrides,
  };
}

export function buildFrontScene(art: RunArtifacts): Scene {
  if (art.fitReport === null) {
    throw new Error(`missing artifact: ${art.dir}/fit_report.json`);
  }
  const fit = art.fitReport;
  const pts = art.hSeries.filter((p) => p.t > 1.0 && p.h > 0);
  if (pts.length < 2) {
    throw new Error("h_series has fewer than 2 usable points beyond t = 1");
  }
  const [wLo, wHi] = fit.window;
  const overlayT = pts.map((p) => p.t).filter((t) => t >= wLo && t <= wHi);

  const main = emptyPanel({
    title: `front position and fitted law (${fit.label})`,
    yLabel: "h(t)",
    xScale: "log",
    yScale: "log",
    series: [
      { x: pts.map((p) => p.t), y: pts.map((p) => p.h), color: COLORS.data, label: "h(t)" },
      {
        x: overlayT,
        y: overlayT.map((t) => overlayValue(fit, t)),
        color: COLORS.overlay,
        dash: true,
        label: "C*g(t)",
      },
    ],
    bands: [{ x0: wLo, x1: wHi, color: COLORS.window }],
    notes: [`C = ${fit.C_hat.toPrecision(6)}`, `flatness = ${fit.flatness.toFixed(4)}`],
  });

  const winPts = pts.filter((p) => p.t >= wLo && p.t <= wHi);
  const ratio = emptyPanel({
    title: "ratio to fitted law",
    yLabel: "h/g(t)",
    xScale: "log",
    series: [
      {
        x: winPts.map((p) => p.t),
        y: winPts.map((p) => lawRatio(fit, p.t, p.h)),
        color: COLORS.data,
      },
    ],
    bands: [{ x0: wLo, x1: wHi, color: COLORS.window }],
  });

  return { width: 720, height: 640, panels: [main, ratio] };
}

export function buildSlopeScene(art: RunArtifacts): Scene {
  if (art.fitReport === null) {
    throw new Error(`missing artifact: ${art.dir}/fit_report.json`);
  }
  const fit = art.fitReport;
  if (fit.slope_diag.length < 2) {
    throw new Error("fit report carries no local log-slope diagnostic");
  }
  const panel = emptyPanel({
    title: "local log-slope of h(t)",
    yLabel: "d ln h / d ln t",
    xScale: "log",
    series: [
      {
        x: fit.slope_diag.map((r) => r[0]),
        y: fit.slope_diag.map((r) => r[1]),
        color: COLORS.data,
      },
    ],
    bands: [{ x0: fit.window[0], x1: fit.window[1], color: COLORS.window }],
    notes: [`selected: ${fit.label}`],
  });
  return { width: 720, height: 360, panels: [panel] };
}

/** Bulk-window edge s = h / ln(e + h), as used by the solver. */
export function bulkEdge(h: number): number {
  return h / Math.log(Math.E + h);
}

/** Sup over the bulk window x <= s(t) of |u - U| + |v - V|. */
export function bulkGap(snap: Snapshot, steady: SteadyProfile): number {
  const dxSteady = steady.x.length > 1 ? steady.x[1] - steady.x[0] : NaN;
  if (!(Math.abs(snap.dx - dxSteady) <= 1e-12)) {
    throw new Error(
      `grid mismatch: snapshot dx=${snap.dx} vs steady profile dx=${dxSteady}`,
    );
  }
  const s = bulkEdge(snap.h);
  const j = Math.floor(s / snap.dx + 1e-12) + 1;
  if (j > steady.U.length || j > snap.u.length) {
    throw new Error(`bulk window s=${s} exceeds the available domain`);
  }
  let gap = 0;
  for (let i = 0; i < j; i++) {
    gap = Math.max(gap, Math.abs(snap.u[i] - steady.U[i]) + Math.abs(snap.v[i] - steady.V[i]));
  }
  return gap;
}

export function buildProfileScene(art: RunArtifacts, maxSnapshots = 3): Scene {
  if (art.snapshots === null || art.snapshots.length === 0) {
    throw new Error(`missing artifact: ${art.dir}/snapshots.jsonl`);
  }
  if (art.steady === null) {
    throw new Error(`missing artifact: ${art.dir}/steady_profile.csv`);
  }
  const steady = art.steady;
  const snaps = art.snapshots.slice(-maxSnapshots);
  const panel = emptyPanel({
    title: "late-time profiles vs steady state",
    xLabel: "x",
    yLabel: "u, v",
    series: [
      { x: steady.x, y: steady.U, color: COLORS.steadyU, width: 2, label: "U(x)" },
      { x: steady.x, y: steady.V, color: COLORS.steadyV, width: 2, label: "V(x)" },
    ],
  });
  for (const snap of snaps) {
    const gap = bulkGap(snap, steady);
    const x = snap.u.map((_, i) => i * snap.dx);
    panel.series.push({ x, y: snap.u, color: COLORS.snapU, dash: true, label: `u, t=${snap.t.toFixed(1)}` });
    panel.series.push({ x, y: snap.v, color: COLORS.snapV, dash: true });
    panel.markers.push({ x: bulkEdge(snap.h), color: COLORS.marker, label: `s(${snap.t.toFixed(1)})` });
    panel.notes.push(`gap(t=${snap.t.toFixed(1)}) = ${gap.toFixed(4)}`);
  }
  return { width: 720, height: 420, panels: [panel] };
}
