/** SVG serialization of a Scene. */

import { layoutPanel, panelSlots } from "./scene.js";
import type { Panel, PanelLayout, Scene } from "./scene.js";

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function fmt(v: number): string {
  return Number.isInteger(v) ? String(v) : v.toFixed(2);
}

function polyline(xs: number[], ys: number[], color: string, width: number, dash: boolean): string {
  const pts = xs.map((x, i) => `${fmt(x)},${fmt(ys[i])}`).join(" ");
  const dashAttr = dash ? ' stroke-dasharray="6 4"' : "";
  return `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="${width}"${dashAttr}/>`;
}

function text(x: number, y: number, s: string, opts: { anchor?: string; size?: number } = {}): string {
  const anchor = opts.anchor ?? "start";
  const size = opts.size ?? 12;
  return (
    `<text x="${fmt(x)}" y="${fmt(y)}" font-family="monospace" font-size="${size}" ` +
    `text-anchor="${anchor}">${esc(s)}</text>`
  );
}

function renderPanel(panel: Panel, layout: PanelLayout): string {
  const { rect, toPx, toPy, xTicks, yTicks } = layout;
  const parts: string[] = [];

  for (const band of panel.bands) {
    const a = toPx(band.x0);
    const b = toPx(band.x1);
    parts.push(
      `<rect x="${fmt(Math.min(a, b))}" y="${fmt(rect.y)}" width="${fmt(Math.abs(b - a))}" ` +
        `height="${fmt(rect.h)}" fill="${band.color}" opacity="0.25"/>`,
    );
  }

  parts.push(
    `<rect x="${fmt(rect.x)}" y="${fmt(rect.y)}" width="${fmt(rect.w)}" height="${fmt(rect.h)}" ` +
      `fill="none" stroke="#333" stroke-width="1"/>`,
  );
  for (const tick of xTicks) {
    parts.push(polyline([tick.px, tick.px], [rect.y + rect.h, rect.y + rect.h + 5], "#333", 1, false));
    parts.push(text(tick.px, rect.y + rect.h + 18, tick.label, { anchor: "middle", size: 10 }));
  }
  for (const tick of yTicks) {
    parts.push(polyline([rect.x - 5, rect.x], [tick.px, tick.px], "#333", 1, false));
    parts.push(text(rect.x - 8, tick.px + 3, tick.label, { anchor: "end", size: 10 }));
  }

  for (const m of panel.markers) {
    const px = toPx(m.x);
    parts.push(polyline([px, px], [rect.y, rect.y + rect.h], m.color, 1, true));
    if (m.label) {
      parts.push(text(px + 3, rect.y + 12, m.label, { size: 10 }));
    }
  }

  for (const s of panel.series) {
    parts.push(polyline(s.x.map(toPx), s.y.map(toPy), s.color, s.width ?? 1.5, s.dash ?? false));
  }

  parts.push(text(rect.x + rect.w / 2, rect.y - 10, panel.title, { anchor: "middle" }));
  parts.push(text(rect.x + rect.w / 2, rect.y + rect.h + 34, panel.xLabel, { anchor: "middle", size: 11 }));
  parts.push(
    `<text x="${fmt(rect.x - 48)}" y="${fmt(rect.y + rect.h / 2)}" font-family="monospace" ` +
      `font-size="11" text-anchor="middle" transform="rotate(-90 ${fmt(rect.x - 48)} ` +
      `${fmt(rect.y + rect.h / 2)})">${esc(panel.yLabel)}</text>`,
  );

  let legendY = rect.y + 14;
  for (const s of panel.series) {
    if (!s.label) continue;
    parts.push(polyline([rect.x + rect.w - 150, rect.x + rect.w - 130], [legendY - 4, legendY - 4], s.color, s.width ?? 1.5, s.dash ?? false));
    parts.push(text(rect.x + rect.w - 125, legendY, s.label, { size: 10 }));
    legendY += 14;
  }
  for (const note of panel.notes) {
    parts.push(text(rect.x + 6, legendY, note, { size: 10 }));
    legendY += 14;
  }
  return parts.join("\n");
}

export function sceneToSvg(scene: Scene): string {
  const slots = panelSlots(scene);
  const body = scene.panels
    .map((panel, i) => renderPanel(panel, layoutPanel(panel, slots[i])))
    .join("\n");
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" ` +
    `viewBox="0 0 ${scene.width} ${scene.height}">\n` +
    `<rect width="${scene.width}" height="${scene.height}" fill="white"/>\n${body}\n</svg>\n`
  );
}
