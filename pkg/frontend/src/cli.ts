#!/usr/bin/env node
/**
 * Usage:
 *   eurbounds-plots --input scan.csv --kind heatmap --out plots/ \
 *       [--columns eur_total,iep_dep] [--title "Werner {column}"]
 *
 * Renders one SVG per column; with no --columns, every non-axis column
 * in the CSV is rendered.
 */

import { loadGrid, render, type PlotKind } from "./render.js";

function parseArgs(argv: string[]): Map<string, string> {
  const args = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new Error(`malformed arguments near ${key}`);
    }
    args.set(key.slice(2), argv[i + 1]);
  }
  return args;
}

export function main(argv: string[]): number {
  let args: Map<string, string>;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err));
    return 1;
  }
  const input = args.get("input");
  const out = args.get("out");
  const kind = (args.get("kind") ?? "heatmap") as PlotKind;
  if (!input || !out || !["heatmap", "line"].includes(kind)) {
    console.error(
      "required: --input scan.csv --out dir [--kind heatmap|line] [--columns a,b]",
    );
    return 1;
  }
  const columns =
    args.get("columns")?.split(",") ?? loadGrid(input).columns;
  try {
    const written = render({
      inputCsv: input,
      columns,
      kind,
      outputDir: out,
      titleTemplate: args.get("title"),
    });
    for (const path of written) console.log(path);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 1;
  }
  return 0;
}

if (process.argv[1] && process.argv[1].endsWith("cli.js")) {
  process.exit(main(process.argv.slice(2)));
}
