/** Batch rendering of scan CSVs into one SVG per requested column. */

import { readFileSync, writeFileSync, mkdirSync } from "node:fs";
import { join } from "node:path";

import { inferGrid, parseCsv, type ScanGrid } from "./csv.js";
import { heatmapSvg, lineSvg } from "./svg.js";

export type PlotKind = "heatmap" | "line";

export interface PlotJob {
  inputCsv: string;
  columns: string[];
  kind: PlotKind;
  outputDir: string;
  titleTemplate?: string;
}

export function loadGrid(path: string): ScanGrid {
  return inferGrid(parseCsv(readFileSync(path, "utf-8")));
}

export function render(job: PlotJob): string[] {
  const grid = loadGrid(job.inputCsv);
  for (const column of job.columns) {
    if (!grid.columns.includes(column)) {
      throw new Error(
        `column ${column} not in ${job.inputCsv}; available: ${grid.columns.join(", ")}`,
      );
    }
  }
  mkdirSync(job.outputDir, { recursive: true });
  const written: string[] = [];
  for (const column of job.columns) {
    const title = (job.titleTemplate ?? "{column}").replaceAll("{column}", column);
    const svg =
      job.kind === "heatmap"
        ? heatmapSvg(grid, column, title)
        : lineSvg(grid, column, title);
    const path = join(job.outputDir, `${column}.svg`);
    writeFileSync(path, svg);
    written.push(path);
  }
  return written;
}
