import { cpSync, mkdtempSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { dirname, join } from "path";
import { fileURLToPath } from "url";

export const GOLDEN_DIR = join(dirname(fileURLToPath(import.meta.url)), "fixtures", "golden_run");

/** Copy the golden run into a scratch directory (rendering writes into it). */
export function scratchGolden(): string {
  const dir = mkdtempSync(join(tmpdir(), "frontier-report-"));
  cpSync(GOLDEN_DIR, dir, { recursive: true });
  return dir;
}

/** Write a synthetic run directory with h(t) = C t^2 exactly. */
export function syntheticExactLaw(C = 0.04): string {
  const dir = mkdtempSync(join(tmpdir(), "frontier-exact-"));
  const lines = ["t,h"];
  const slopeDiag: [number, number][] = [];
  for (let i = 0; i < 500; i++) {
    const t = Math.exp(Math.log(1.0) + (i / 499) * Math.log(200.0));
    lines.push(`${t},${C * t * t}`);
    slopeDiag.push([t, 2.0]);
  }
  writeFileSync(join(dir, "h_series.csv"), lines.join("\n") + "\n");
  const fit = {
    law: { form: "power_log", p: 2.0, q: 0.0 },
    label: "h ~ C t^2 ln^0 t",
    C_hat: C,
    flatness: 1.0,
    window: [20.0, 200.0],
    rms_resid: 0.0,
    slope_diag: slopeDiag,
    candidates: [
      {
        law: { form: "power_log", p: 2.0, q: 0.0 },
        label: "h ~ C t^2 ln^0 t",
        C_hat: C,
        flatness: 1.0,
        trend_slope: 0.0,
      },
    ],
    ambiguous: [],
  };
  writeFileSync(join(dir, "fit_report.json"), JSON.stringify(fit, null, 2));
  return dir;
}
