/** Small grid statistics used for sanity checks on rendered surfaces. */

export function percentile(grid: number[][], q: number): number {
  const flat = grid.flat().slice().sort((a, b) => a - b);
  if (flat.length === 0) throw new Error("empty grid");
  const pos = (q / 100) * (flat.length - 1);
  const lo = Math.floor(pos);
  const hi = Math.ceil(pos);
  return flat[lo] + (flat[hi] - flat[lo]) * (pos - lo);
}

/** Number of 4-connected regions where grid[i][j] > threshold. */
export function countRegionsAbove(grid: number[][], threshold: number): number {
  const rows = grid.length;
  const cols = grid[0].length;
  const seen = grid.map((row) => row.map(() => false));
  let regions = 0;
  for (let si = 0; si < rows; si++) {
    for (let sj = 0; sj < cols; sj++) {
      if (seen[si][sj] || grid[si][sj] <= threshold) continue;
      regions++;
      const stack: [number, number][] = [[si, sj]];
      seen[si][sj] = true;
      while (stack.length > 0) {
        const [i, j] = stack.pop()!;
        for (const [di, dj] of [[1, 0], [-1, 0], [0, 1], [0, -1]] as const) {
          const ni = i + di;
          const nj = j + dj;
          if (
            ni >= 0 && ni < rows && nj >= 0 && nj < cols &&
            !seen[ni][nj] && grid[ni][nj] > threshold
          ) {
            seen[ni][nj] = true;
            stack.push([ni, nj]);
          }
        }
      }
    }
  }
  return regions;
}
