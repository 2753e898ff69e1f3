/**
 * PNG rasterization of a Scene with no native dependencies: a small
 * software canvas (lines, rects, 5x7 bitmap text) encoded via pngjs.
 * Geometry comes from the same layout as the SVG backend.
 */

import { PNG } from "pngjs";
import { layoutPanel, panelSlots } from "./scene.js";
import type { Panel, PanelLayout, Scene } from "./scene.js";

// 5x7 bitmap glyphs; uppercase letters reuse the lowercase shapes.
const GLYPHS: Record<string, string[]> = {
  "0": [".XXX.", "X...X", "X..XX", "X.X.X", "XX..X", "X...X", ".XXX."],
  "1": ["..X..", ".XX..", "..X..", "..X..", "..X..", "..X..", ".XXX."],
  "2": [".XXX.", "X...X", "....X", "...X.", "..X..", ".X...", "XXXXX"],
  "3": [".XXX.", "X...X", "....X", "..XX.", "....X", "X...X", ".XXX."],
  "4": ["...X.", "..XX.", ".X.X.", "X..X.", "XXXXX", "...X.", "...X."],
  "5": ["XXXXX", "X....", "XXXX.", "....X", "....X", "X...X", ".XXX."],
  "6": [".XXX.", "X....", "X....", "XXXX.", "X...X", "X...X", ".XXX."],
  "7": ["XXXXX", "....X", "...X.", "..X..", ".X...", ".X...", ".X..."],
  "8": [".XXX.", "X...X", "X...X", ".XXX.", "X...X", "X...X", ".XXX."],
  "9": [".XXX.", "X...X", "X...X", ".XXXX", "....X", "....X", ".XXX."],
  a: [".....", ".....", ".XXX.", "....X", ".XXXX", "X...X", ".XXXX"],
  b: ["X....", "X....", "XXXX.", "X...X", "X...X", "X...X", "XXXX."],
  c: [".....", ".....", ".XXXX", "X....", "X....", "X....", ".XXXX"],
  d: ["....X", "....X", ".XXXX", "X...X", "X...X", "X...X", ".XXXX"],
  e: [".....", ".....", ".XXX.", "X...X", "XXXXX", "X....", ".XXXX"],
  f: ["..XX.", ".X...", "XXXX.", ".X...", ".X...", ".X...", ".X..."],
  g: [".....", ".XXXX", "X...X", "X...X", ".XXXX", "....X", ".XXX."],
  h: ["X....", "X....", "XXXX.", "X...X", "X...X", "X...X", "X...X"],
  i: ["..X..", ".....", ".XX..", "..X..", "..X..", "..X..", ".XXX."],
  j: ["...X.", ".....", "...X.", "...X.", "...X.", "X..X.", ".XX.."],
  k: ["X....", "X....", "X..X.", "X.X..", "XX...", "X.X..", "X..X."],
  l: [".XX..", "..X..", "..X..", "..X..", "..X..", "..X..", ".XXX."],
  m: [".....", ".....", "XX.X.", "X.X.X", "X.X.X", "X.X.X", "X.X.X"],
  n: [".....", ".....", "XXXX.", "X...X", "X...X", "X...X", "X...X"],
  o: [".....", ".....", ".XXX.", "X...X", "X...X", "X...X", ".XXX."],
  p: [".....", "XXXX.", "X...X", "X...X", "XXXX.", "X....", "X...."],
  q: [".....", ".XXXX", "X...X", "X...X", ".XXXX", "....X", "....X"],
  r: [".....", ".....", "X.XX.", "XX..X", "X....", "X....", "X...."],
  s: [".....", ".....", ".XXXX", "X....", ".XXX.", "....X", "XXXX."],
  t: [".X...", ".X...", "XXXX.", ".X...", ".X...", ".X..X", "..XX."],
  u: [".....", ".....", "X...X", "X...X", "X...X", "X...X", ".XXXX"],
  v: [".....", ".....", "X...X", "X...X", "X...X", ".X.X.", "..X.."],
  w: [".....", ".....", "X...X", "X...X", "X.X.X", "X.X.X", ".X.X."],
  x: [".....", ".....", "X...X", ".X.X.", "..X..", ".X.X.", "X...X"],
  y: [".....", "X...X", "X...X", ".XXXX", "....X", "X...X", ".XXX."],
  z: [".....", ".....", "XXXXX", "...X.", "..X..", ".X...", "XXXXX"],
  ".": [".....", ".....", ".....", ".....", ".....", ".XX..", ".XX.."],
  ",": [".....", ".....", ".....", ".....", ".XX..", "..X..", ".X..."],
  "-": [".....", ".....", ".....", "XXXXX", ".....", ".....", "....."],
  "+": [".....", "..X..", "..X..", "XXXXX", "..X..", "..X..", "....."],
  "=": [".....", ".....", "XXXXX", ".....", "XXXXX", ".....", "....."],
  "(": ["...X.", "..X..", ".X...", ".X...", ".X...", "..X..", "...X."],
  ")": [".X...", "..X..", "...X.", "...X.", "...X.", "..X..", ".X..."],
  "/": ["....X", "....X", "...X.", "..X..", ".X...", "X....", "X...."],
  "*": [".....", "..X..", "X.X.X", ".XXX.", "X.X.X", "..X..", "....."],
  "^": ["..X..", ".X.X.", "X...X", ".....", ".....", ".....", "....."],
  "~": [".....", ".....", ".XX.X", "X..X.", ".....", ".....", "....."],
  "%": ["XX..X", "XX.X.", "..X..", "..X..", ".X.XX", "X..XX", "....."],
  " ": [".....", ".....", ".....", ".....", ".....", ".....", "....."],
};

function hexColor(c: string): [number, number, number] {
  const m = /^#([0-9a-f]{6})$/i.exec(c);
  if (!m) return [51, 51, 51];
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

class Raster {
  png: PNG;

  constructor(width: number, height: number) {
    this.png = new PNG({ width, height });
    this.png.data.fill(255);
  }

  set(x: number, y: number, rgb: [number, number, number], alpha = 1): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.png.width || yi >= this.png.height) return;
    const i = (yi * this.png.width + xi) * 4;
    for (let c = 0; c < 3; c++) {
      this.png.data[i + c] = Math.round(alpha * rgb[c] + (1 - alpha) * this.png.data[i + c]);
    }
    this.png.data[i + 3] = 255;
  }

  line(x0: number, y0: number, x1: number, y1: number, color: string, width = 1, dash = false): void {
    const rgb = hexColor(color);
    const len = Math.hypot(x1 - x0, y1 - y0);
    const steps = Math.max(1, Math.ceil(len * 2));
    const r = Math.max(0, Math.floor((width - 1) / 2));
    for (let i = 0; i <= steps; i++) {
      const s = i / steps;
      if (dash && Math.floor((s * len) / 5) % 2 === 1) continue;
      const x = x0 + s * (x1 - x0);
      const y = y0 + s * (y1 - y0);
      for (let dx = -r; dx <= r + ((width - 1) % 2); dx++) {
        for (let dy = -r; dy <= r + ((width - 1) % 2); dy++) {
          this.set(x + dx, y + dy, rgb);
        }
      }
    }
  }

  fillRect(x: number, y: number, w: number, h: number, color: string, alpha: number): void {
    const rgb = hexColor(color);
    for (let yi = Math.round(y); yi < Math.round(y + h); yi++) {
      for (let xi = Math.round(x); xi < Math.round(x + w); xi++) {
        this.set(xi, yi, rgb, alpha);
      }
    }
  }

  text(x: number, y: number, s: string, anchor: "start" | "middle" | "end" = "start"): void {
    // y is the text baseline, matching the SVG backend's convention
    const wTotal = s.length * 6;
    let cx = anchor === "middle" ? x - wTotal / 2 : anchor === "end" ? x - wTotal : x;
    const top = y - 7;
    for (const ch of s) {
      const glyph = GLYPHS[ch] ?? GLYPHS[ch.toLowerCase()] ?? GLYPHS["."];
      for (let row = 0; row < 7; row++) {
        for (let col = 0; col < 5; col++) {
          if (glyph[row][col] === "X") this.set(cx + col, top + row, [34, 34, 34]);
        }
      }
      cx += 6;
    }
  }
}

function renderPanel(r: Raster, panel: Panel, layout: PanelLayout): void {
  const { rect, toPx, toPy, xTicks, yTicks } = layout;

  for (const band of panel.bands) {
    const a = toPx(band.x0);
    const b = toPx(band.x1);
    r.fillRect(Math.min(a, b), rect.y, Math.abs(b - a), rect.h, band.color, 0.25);
  }

  r.line(rect.x, rect.y, rect.x + rect.w, rect.y, "#333333");
  r.line(rect.x, rect.y + rect.h, rect.x + rect.w, rect.y + rect.h, "#333333");
  r.line(rect.x, rect.y, rect.x, rect.y + rect.h, "#333333");
  r.line(rect.x + rect.w, rect.y, rect.x + rect.w, rect.y + rect.h, "#333333");
  for (const tick of xTicks) {
    r.line(tick.px, rect.y + rect.h, tick.px, rect.y + rect.h + 5, "#333333");
    r.text(tick.px, rect.y + rect.h + 18, tick.label, "middle");
  }
  for (const tick of yTicks) {
    r.line(rect.x - 5, tick.px, rect.x, tick.px, "#333333");
    r.text(rect.x - 8, tick.px + 3, tick.label, "end");
  }

  for (const m of panel.markers) {
    const px = toPx(m.x);
    r.line(px, rect.y, px, rect.y + rect.h, m.color, 1, true);
    if (m.label) r.text(px + 3, rect.y + 12, m.label);
  }

  for (const s of panel.series) {
    const xs = s.x.map(toPx);
    const ys = s.y.map(toPy);
    for (let i = 1; i < xs.length; i++) {
      r.line(xs[i - 1], ys[i - 1], xs[i], ys[i], s.color, Math.round(s.width ?? 2), s.dash ?? false);
    }
  }

  r.text(rect.x + rect.w / 2, rect.y - 10, panel.title, "middle");
  r.text(rect.x + rect.w / 2, rect.y + rect.h + 34, panel.xLabel, "middle");
  r.text(rect.x - 58, rect.y + rect.h / 2, panel.yLabel);

  let legendY = rect.y + 14;
  for (const s of panel.series) {
    if (!s.label) continue;
    r.line(rect.x + rect.w - 150, legendY - 4, rect.x + rect.w - 130, legendY - 4, s.color, Math.round(s.width ?? 2), s.dash ?? false);
    r.text(rect.x + rect.w - 125, legendY, s.label);
    legendY += 14;
  }
  for (const note of panel.notes) {
    r.text(rect.x + 6, legendY, note);
    legendY += 14;
  }
}

export function sceneToPng(scene: Scene): Buffer {
  const r = new Raster(scene.width, scene.height);
  const slots = panelSlots(scene);
  scene.panels.forEach((panel, i) => renderPanel(r, panel, layoutPanel(panel, slots[i])));
  return PNG.sync.write(r.png);
}
