#!/usr/bin/env node
/** CLI: frontier-report <run_dir> [--panels front,slope,profile] [--fmt png,svg] */

import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { ALL_FORMATS, ALL_PANELS, renderRunDir } from "./render.js";
import type { Format, PanelName } from "./render.js";

export function main(argv: string[]): number {
  const args = yargs(argv)
    .scriptName("frontier-report")
    .command("$0 <run_dir>", "render figures from a frontier run directory", (y) =>
      y.positional("run_dir", { type: "string", demandOption: true }),
    )
    .option("panels", {
      type: "string",
      default: ALL_PANELS.join(","),
      describe: "comma-separated subset of front,slope,profile",
    })
    .option("fmt", {
      type: "string",
      default: ALL_FORMATS.join(","),
      describe: "comma-separated subset of svg,png",
    })
    .strict()
    .exitProcess(false)
    .parseSync();

  const panels = String(args.panels).split(",").map((s) => s.trim()) as PanelName[];
  const formats = String(args.fmt).split(",").map((s) => s.trim()) as Format[];
  try {
    const written = renderRunDir(String(args.run_dir), panels, formats);
    for (const path of written) console.log(path);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

const isDirectCall = process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectCall) {
  process.exit(main(hideBin(process.argv)));
}
