/**
 * Renderer-independent figure model: panels of data-space series, shaded
 * bands, vertical markers and note lines, plus the axis layout shared by
 * the SVG and PNG backends so both draw pixel-identical geometry.
 */

export type Scale = "linear" | "log";

export interface Series {
  x: number[];
  y: number[];
  color: string;
  width?: number;
  dash?: boolean;
  label?: string;
}

export interface Band {
  x0: number;
  x1: number;
  color: string;
}

export interface Marker {
  x: number;
  color: string;
  label?: string;
}

export interface Panel {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: Scale;
  yScale: Scale;
  series: Series[];
  bands: Band[];
  markers: Marker[];
  notes: string[];
}

export interface Scene {
  width: number;
  height: number;
  panels: Panel[];
}

export interface Rect {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface Tick {
  value: number;
  px: number;
  label: string;
}

export interface PanelLayout {
  rect: Rect; // plot area in device pixels
  toPx(x: number): number;
  toPy(y: number): number;
  xTicks: Tick[];
  yTicks: Tick[];
}

export const MARGIN = { left: 64, right: 16, top: 28, bottom: 40 };

function finiteExtent(values: number[], scale: Scale): [number, number] {
  const ok = values.filter((v) => Number.isFinite(v) && (scale === "linear" || v > 0));
  if (ok.length === 0) {
    throw new Error("no finite data to determine axis range");
  }
  let lo = Math.min(...ok);
  let hi = Math.max(...ok);
  // constant (or numerically constant) data: don't zoom into float noise
  if (hi - lo <= 1e-9 * Math.max(Math.abs(lo), Math.abs(hi))) {
    const mid = 0.5 * (lo + hi);
    const half = scale === "log" ? Math.abs(mid) / 2 : Math.max(0.5, Math.abs(mid) / 2);
    lo = mid - half;
    hi = mid + half;
  }
  return [lo, hi];
}

function niceStep(span: number): number {
  const raw = span / 5;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  for (const m of [1, 2, 5, 10]) {
    if (m * mag >= raw) return m * mag;
  }
  return 10 * mag;
}

function fmtTick(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(0).replace("+", "");
  return parseFloat(v.toPrecision(6)).toString();
}

function axisTicks(lo: number, hi: number, scale: Scale, project: (v: number) => number): Tick[] {
  const ticks: Tick[] = [];
  if (scale === "log") {
    const e0 = Math.ceil(Math.log10(lo) - 1e-9);
    const e1 = Math.floor(Math.log10(hi) + 1e-9);
    for (let e = e0; e <= e1; e++) {
      const v = Math.pow(10, e);
      ticks.push({ value: v, px: project(v), label: `1e${e}` });
    }
    if (ticks.length >= 2) return ticks;
    // fewer than one decade: fall through to linear ticks
  }
  const step = niceStep(hi - lo);
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12 * step; v += step) {
    ticks.push({ value: v, px: project(v), label: fmtTick(v) });
  }
  return ticks;
}

/** Compute the plot rectangle and data→pixel maps for one panel slot. */
export function layoutPanel(panel: Panel, slot: Rect): PanelLayout {
  const rect: Rect = {
    x: slot.x + MARGIN.left,
    y: slot.y + MARGIN.top,
    w: slot.w - MARGIN.left - MARGIN.right,
    h: slot.h - MARGIN.top - MARGIN.bottom,
  };
  const xs = panel.series.flatMap((s) => s.x).concat(panel.markers.map((m) => m.x));
  const ys = panel.series.flatMap((s) => s.y);
  const [x0, x1] = finiteExtent(xs, panel.xScale);
  let [y0, y1] = finiteExtent(ys, panel.yScale);
  if (panel.yScale === "linear") {
    const pad = 0.05 * (y1 - y0);
    y0 -= pad;
    y1 += pad;
  }
  const fx = (v: number) => (panel.xScale === "log" ? Math.log(v) : v);
  const fy = (v: number) => (panel.yScale === "log" ? Math.log(v) : v);
  const toPx = (x: number) => rect.x + ((fx(x) - fx(x0)) / (fx(x1) - fx(x0))) * rect.w;
  const toPy = (y: number) => rect.y + rect.h - ((fy(y) - fy(y0)) / (fy(y1) - fy(y0))) * rect.h;
  return {
    rect,
    toPx,
    toPy,
    xTicks: axisTicks(x0, x1, panel.xScale, toPx),
    yTicks: axisTicks(y0, y1, panel.yScale, toPy),
  };
}

/** Stack panels vertically into equal slots of a width x height canvas. */
export function panelSlots(scene: Scene): Rect[] {
  const hEach = scene.height / scene.panels.length;
  return scene.panels.map((_, i) => ({
    x: 0,
    y: i * hEach,
    w: scene.width,
    h: hEach,
  }));
}
