/**
 * SVG emission for heatmaps and line plots.
 *
 * Heatmaps carry one <rect> per grid cell inside a scaled group, so the
 * cell raster always equals the scan grid; every cell keeps its CSV cell
 * string in a data-value attribute (color is quantized, the value is not).
 */

import type { ScanGrid } from "./csv.js";

const MARGIN = { left: 64, right: 24, top: 34, bottom: 52 };
const PLOT_W = 480;
const PLOT_H = 400;

// compact viridis-style ramp, linearly interpolated
const RAMP: [number, number, number][] = [
  [68, 1, 84],
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37],
];

export function colorFor(t: number): string {
  const x = Math.min(1, Math.max(0, t)) * (RAMP.length - 1);
  const i = Math.min(RAMP.length - 2, Math.floor(x));
  const f = x - i;
  const c = RAMP[i].map((v, k) => Math.round(v + f * (RAMP[i + 1][k] - v)));
  return `rgb(${c[0]},${c[1]},${c[2]})`;
}

function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

const AXIS_LABELS: Record<string, string> = {
  theta: "θ (rad)",
  phi: "φ (rad)",
};

function axisLabel(name: string): string {
  return AXIS_LABELS[name] ?? name;
}

function frame(title: string, xLabel: string, yLabel: string, body: string): string {
  const w = MARGIN.left + PLOT_W + MARGIN.right;
  const h = MARGIN.top + PLOT_H + MARGIN.bottom;
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${w}" height="${h}" viewBox="0 0 ${w} ${h}">`,
    `<rect width="${w}" height="${h}" fill="white"/>`,
    `<text x="${w / 2}" y="22" text-anchor="middle" font-size="15">${esc(title)}</text>`,
    `<text x="${MARGIN.left + PLOT_W / 2}" y="${h - 14}" text-anchor="middle" font-size="13">${esc(xLabel)}</text>`,
    `<text x="18" y="${MARGIN.top + PLOT_H / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${MARGIN.top + PLOT_H / 2})">${esc(yLabel)}</text>`,
    body,
    `</svg>`,
  ].join("\n");
}

function tickTexts(values: number[], horizontal: boolean): string {
  const picks = [0, Math.floor(values.length / 2), values.length - 1];
  const parts: string[] = [];
  for (const k of picks) {
    const frac = values.length > 1 ? k / (values.length - 1) : 0;
    const label = values[k].toFixed(2);
    if (horizontal) {
      const x = MARGIN.left + frac * PLOT_W;
      parts.push(
        `<text x="${x}" y="${MARGIN.top + PLOT_H + 18}" text-anchor="middle" font-size="11">${label}</text>`,
      );
    } else {
      const y = MARGIN.top + frac * PLOT_H;
      parts.push(
        `<text x="${MARGIN.left - 6}" y="${y + 4}" text-anchor="end" font-size="11">${label}</text>`,
      );
    }
  }
  return parts.join("\n");
}

export function heatmapSvg(grid: ScanGrid, column: string, title: string): string {
  const values = grid.values.get(column);
  const raw = grid.raw.get(column);
  if (!values || !raw) {
    throw new Error(
      `column ${column} not in CSV; available: ${grid.columns.join(", ")}`,
    );
  }
  if (grid.axes.length !== 2) {
    throw new Error("heatmap needs a two-axis scan");
  }
  const nRows = grid.axes[0].length; // first axis (outer), drawn on y
  const nCols = grid.axes[1].length; // second axis (inner), drawn on x
  const flat = values.flat();
  const lo = Math.min(...flat);
  const hi = Math.max(...flat);
  const span = hi - lo || 1;

  const cells: string[] = [];
  for (let i = 0; i < nRows; i++) {
    for (let j = 0; j < nCols; j++) {
      const fill = colorFor((values[i][j] - lo) / span);
      cells.push(
        `<rect x="${j}" y="${i}" width="1" height="1" fill="${fill}" data-value="${raw[i][j]}"/>`,
      );
    }
  }
  const body = [
    `<g id="cells" transform="translate(${MARGIN.left},${MARGIN.top}) scale(${PLOT_W / nCols},${PLOT_H / nRows})" shape-rendering="crispEdges" data-grid-rows="${nRows}" data-grid-cols="${nCols}">`,
    ...cells,
    `</g>`,
    tickTexts(grid.axes[1], true),
    tickTexts(grid.axes[0], false),
  ].join("\n");
  return frame(title, axisLabel(grid.axisNames[1]), axisLabel(grid.axisNames[0]), body);
}

export function lineSvg(grid: ScanGrid, column: string, title: string): string {
  const values = grid.values.get(column);
  const raw = grid.raw.get(column);
  if (!values || !raw) {
    throw new Error(
      `column ${column} not in CSV; available: ${grid.columns.join(", ")}`,
    );
  }
  if (grid.axes.length !== 1) {
    throw new Error("line plot needs a single-axis scan");
  }
  const xs = grid.axes[0];
  const ys = values.map((row) => row[0]);
  const x0 = xs[0];
  const xSpan = xs[xs.length - 1] - x0 || 1;
  const lo = Math.min(...ys);
  const hi = Math.max(...ys);
  const span = hi - lo || 1;

  const px = (x: number) => MARGIN.left + ((x - x0) / xSpan) * PLOT_W;
  const py = (y: number) => MARGIN.top + (1 - (y - lo) / span) * PLOT_H;
  const points = xs.map((x, k) => `${px(x)},${py(ys[k])}`).join(" ");
  const markers = xs
    .map(
      (x, k) =>
        `<circle cx="${px(x)}" cy="${py(ys[k])}" r="1.5" fill="#1f4e9c" data-x="${x}" data-value="${raw[k][0]}"/>`,
    )
    .join("\n");
  const body = [
    `<polyline fill="none" stroke="#1f4e9c" stroke-width="1.5" points="${points}"/>`,
    markers,
    tickTexts(xs, true),
    tickTexts([hi, (lo + hi) / 2, lo], false),
  ].join("\n");
  return frame(title, axisLabel(grid.axisNames[0]), column, body);
}
