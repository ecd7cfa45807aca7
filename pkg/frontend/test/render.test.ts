import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { countRegionsAbove, percentile } from "../src/analysis.js";
import { inferGrid, parseCsv } from "../src/csv.js";
import { loadGrid, render } from "../src/render.js";

const DATA = join(dirname(fileURLToPath(import.meta.url)), "..", "testdata");

const HEATMAP_FIXTURES = [
  "werner_eta0p2.csv",
  "werner_eta0p8.csv",
  "werner_eta0p95.csv",
  "horodecki_group1.csv",
  "horodecki_group2.csv",
  "horodecki_group3.csv",
];

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "eurplots-"));
}

function cellValues(svg: string): Map<string, string> {
  // data-x/data-value attributes keyed by "x,y" grid position
  const out = new Map<string, string>();
  for (const m of svg.matchAll(
    /<rect x="(\d+)" y="(\d+)" width="1" height="1"[^>]*data-value="([^"]+)"/g,
  )) {
    out.set(`${m[2]},${m[1]}`, m[3]);
  }
  return out;
}

describe("csv parsing", () => {
  it("reconstructs the scan grid", () => {
    const grid = loadGrid(join(DATA, "werner_eta0p95.csv"));
    expect(grid.axisNames).toEqual(["theta", "phi"]);
    expect(grid.axes[0]).toHaveLength(41);
    expect(grid.axes[1]).toHaveLength(41);
    expect(grid.columns).toContain("eur_total");
    expect(grid.values.get("eur_total")).toHaveLength(41);
  });

  it("rejects malformed tables", () => {
    expect(() => parseCsv("a,b\n")).toThrow();
    expect(() =>
      inferGrid(parseCsv("a,b\n1,2\n3,4\n")),
    ).toThrow(/axis/);
  });
});

describe("heatmap rendering", () => {
  it("renders a 2x2 smoke grid without error", () => {
    const csv = "theta,phi,eur_total\n0,0,0.1\n0,1,0.2\n3,0,0.3\n3,1,0.4\n";
    const path = join(tmp(), "smoke.csv");
    writeFileSync(path, csv);
    const out = tmp();
    const [svgPath] = render({
      inputCsv: path,
      columns: ["eur_total"],
      kind: "heatmap",
      outputDir: out,
    });
    const svg = readFileSync(svgPath, "utf-8");
    expect(svg).toContain('data-grid-rows="2"');
    expect(svg).toContain('data-grid-cols="2"');
    expect(cellValues(svg).size).toBe(4);
  });

  it.each(HEATMAP_FIXTURES)("pixel grid equals the scan grid for %s", (name) => {
    const out = tmp();
    const [svgPath] = render({
      inputCsv: join(DATA, name),
      columns: ["eur_total"],
      kind: "heatmap",
      outputDir: out,
    });
    const svg = readFileSync(svgPath, "utf-8");
    expect(svg).toContain('data-grid-rows="41"');
    expect(svg).toContain('data-grid-cols="41"');
    expect(cellValues(svg).size).toBe(41 * 41);
    // axes are labeled in radians
    expect(svg).toContain("θ (rad)");
    expect(svg).toContain("φ (rad)");
  });

  it("renders one image per requested column", () => {
    const out = tmp();
    const written = render({
      inputCsv: join(DATA, "werner_eta0p8.csv"),
      columns: ["eur_total", "iep_dep", "L1"],
      kind: "heatmap",
      outputDir: out,
    });
    expect(written.map((p) => p.split("/").pop())).toEqual([
      "eur_total.svg",
      "iep_dep.svg",
      "L1.svg",
    ]);
  });

  it("keeps cell values lossless with respect to the CSV", () => {
    const grid = loadGrid(join(DATA, "horodecki_group1.csv"));
    const out = tmp();
    const [svgPath] = render({
      inputCsv: join(DATA, "horodecki_group1.csv"),
      columns: ["iep_indep"],
      kind: "heatmap",
      outputDir: out,
    });
    const cells = cellValues(readFileSync(svgPath, "utf-8"));
    const raw = grid.raw.get("iep_indep")!;
    for (const [i, j] of [[0, 0], [7, 31], [40, 40], [20, 3]] as const) {
      expect(cells.get(`${i},${j}`)).toBe(raw[i][j]);
    }
  });

  it("rejects a missing column and lists what exists", () => {
    expect(() =>
      render({
        inputCsv: join(DATA, "werner_eta0p2.csv"),
        columns: ["nope"],
        kind: "heatmap",
        outputDir: tmp(),
      }),
    ).toThrow(/available: .*eur_total/);
  });
});

describe("surface structure", () => {
  it("eta=0.95 eur_total has exactly two regions above the 90th percentile", () => {
    const grid = loadGrid(join(DATA, "werner_eta0p95.csv"));
    const surface = grid.values.get("eur_total")!;
    const level = percentile(surface, 90);
    expect(countRegionsAbove(surface, level)).toBe(2);
  });

  it("all fixture surfaces are finite", () => {
    for (const name of HEATMAP_FIXTURES) {
      const grid = loadGrid(join(DATA, name));
      for (const column of grid.columns) {
        for (const row of grid.values.get(column)!) {
          for (const v of row) expect(Number.isFinite(v)).toBe(true);
        }
      }
    }
  });
});

describe("line rendering", () => {
  it("marker values match the CSV exactly", () => {
    const out = tmp();
    const [svgPath] = render({
      inputCsv: join(DATA, "werner_line_phi_pi8.csv"),
      columns: ["eur_total"],
      kind: "line",
      outputDir: out,
    });
    const svg = readFileSync(svgPath, "utf-8");
    const markers = [...svg.matchAll(/data-x="([^"]+)" data-value="([^"]+)"/g)];
    expect(markers).toHaveLength(121);
    const grid = loadGrid(join(DATA, "werner_line_phi_pi8.csv"));
    const raw = grid.raw.get("eur_total")!;
    markers.forEach((m, k) => {
      expect(Number(m[1])).toBe(grid.axes[0][k]);
      expect(m[2]).toBe(raw[k][0]);
    });
  });

  it("refuses a two-axis scan", () => {
    expect(() =>
      render({
        inputCsv: join(DATA, "werner_eta0p2.csv"),
        columns: ["eur_total"],
        kind: "line",
        outputDir: tmp(),
      }),
    ).toThrow(/single-axis/);
  });
});
