/** Orchestration: render the requested panels of a run directory into
 * <run_dir>/figures/ in the requested formats. */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import { loadRunDir } from "./artifacts.js";
import { buildFrontScene, buildProfileScene, buildSlopeScene } from "./figures.js";
import { sceneToPng } from "./png.js";
import type { Scene } from "./scene.js";
import { sceneToSvg } from "./svg.js";

export const ALL_PANELS = ["front", "slope", "profile"] as const;
export type PanelName = (typeof ALL_PANELS)[number];
export const ALL_FORMATS = ["svg", "png"] as const;
export type Format = (typeof ALL_FORMATS)[number];

const BUILDERS: Record<PanelName, (art: ReturnType<typeof loadRunDir>) => Scene> = {
  front: buildFrontScene,
  slope: buildSlopeScene,
  profile: buildProfileScene,
};

export function renderRunDir(
  runDir: string,
  panels: readonly PanelName[] = ALL_PANELS,
  formats: readonly Format[] = ALL_FORMATS,
): string[] {
  for (const p of panels) {
    if (!ALL_PANELS.includes(p)) throw new Error(`unknown panel '${p}'`);
  }
  for (const f of formats) {
    if (!ALL_FORMATS.includes(f)) throw new Error(`unknown format '${f}'`);
  }
  const art = loadRunDir(runDir);
  const outDir = join(runDir, "figures");
  mkdirSync(outDir, { recursive: true });
  const written: string[] = [];
  for (const panel of panels) {
    const scene = BUILDERS[panel](art);
    for (const fmt of formats) {
      const path = join(outDir, `${panel}.${fmt}`);
      if (fmt === "svg") {
        writeFileSync(path, sceneToSvg(scene));
      } else {
        writeFileSync(path, sceneToPng(scene));
      }
      written.push(path);
    }
  }
  return written;
}
