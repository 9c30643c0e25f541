import type { DatasetRow } from "./state";

/**
 * Split the dataset CSV for display.  The service does the authoritative
 * parse; this one only needs to recover the cells the user uploaded
 * (unquoted values, first column is the row id).
 */
export function rowsForDisplay(csv: string): { header: string[]; rows: DatasetRow[] } {
  const lines = csv
    .split(/\r?\n/)
    .map((l) => l.trim())
    .filter((l) => l.length > 0);
  if (!lines.length) return { header: [], rows: [] };
  const header = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line) => {
    const cells = line.split(",").map((c) => c.trim());
    return { id: cells[0], values: cells.slice(1) };
  });
  return { header, rows };
}
