/**
 * Parsing of scan CSVs and reconstruction of the underlying grid.
 *
 * The scan CSV layout is: one or two leading axis columns (e.g. theta, phi)
 * followed by bound columns; rows are row-major with the first axis outer.
 * Raw cell strings are kept alongside parsed numbers so downstream
 * consumers can stay lossless with respect to the file.
 */

export interface ScanTable {
  header: string[];
  rows: string[][];
}

export interface ScanGrid {
  /** axis names, one (line scan) or two (surface scan) */
  axisNames: string[];
  /** axis tick values, in file order */
  axes: number[][];
  /** non-axis column names */
  columns: string[];
  /** column name -> row-major values, shape axes[0].length x axes[1].length */
  values: Map<string, number[][]>;
  /** column name -> raw cell strings in the same layout */
  raw: Map<string, string[][]>;
}

export function parseCsv(text: string): ScanTable {
  const lines = text.split(/\r?\n/).filter((l) => l.length > 0);
  if (lines.length < 2) {
    throw new Error("CSV has no data rows");
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((l) => l.split(","));
  for (const row of rows) {
    if (row.length !== header.length) {
      throw new Error(`CSV row has ${row.length} cells, expected ${header.length}`);
    }
  }
  return { header, rows };
}

const AXIS_NAMES = new Set(["theta", "phi"]);

export function inferGrid(table: ScanTable): ScanGrid {
  const axisIdx: number[] = [];
  for (let i = 0; i < table.header.length; i++) {
    if (AXIS_NAMES.has(table.header[i])) axisIdx.push(i);
  }
  if (axisIdx.length < 1 || axisIdx.length > 2) {
    throw new Error(
      `expected one or two axis columns (theta/phi), found ${axisIdx.length}`,
    );
  }
  const axisNames = axisIdx.map((i) => table.header[i]);
  const axes = axisIdx.map((i) => uniqueInOrder(table.rows.map((r) => r[i])));

  const nOuter = axes[0].length;
  const nInner = axisIdx.length === 2 ? axes[1].length : 1;
  if (nOuter * nInner !== table.rows.length) {
    throw new Error(
      `grid ${nOuter}x${nInner} does not match ${table.rows.length} data rows`,
    );
  }

  const columns = table.header.filter((_, i) => !axisIdx.includes(i));
  const values = new Map<string, number[][]>();
  const raw = new Map<string, string[][]>();
  for (const name of columns) {
    const col = table.header.indexOf(name);
    const grid: number[][] = [];
    const rawGrid: string[][] = [];
    for (let i = 0; i < nOuter; i++) {
      const numRow: number[] = [];
      const strRow: string[] = [];
      for (let j = 0; j < nInner; j++) {
        const cell = table.rows[i * nInner + j][col];
        strRow.push(cell);
        numRow.push(Number(cell));
      }
      grid.push(numRow);
      rawGrid.push(strRow);
    }
    values.set(name, grid);
    raw.set(name, rawGrid);
  }
  return { axisNames, axes, columns, values, raw };
}

function uniqueInOrder(items: string[]): number[] {
  const seen = new Set<string>();
  const out: number[] = [];
  for (const item of items) {
    if (!seen.has(item)) {
      seen.add(item);
      out.push(Number(item));
    }
  }
  return out;
}
