/**
 * Minimal CSV table reader for the simulator's outputs.
 *
 * Files are plain comma-separated text with one header line and float
 * cells.  Schema problems raise SchemaError with the offending and the
 * available column names so the CLI can print useful diagnostics.
 */

import { readFileSync } from "fs";

export interface Table {
  path: string;
  columns: string[];
  /** rows[i][j] is the value of columns[j] in data row i */
  rows: number[][];
}

export class SchemaError extends Error {}

export function readTable(path: string): Table {
  const text = readFileSync(path, "utf-8");
  const lines = text.trim().split("\n");
  if (lines.length < 2) {
    throw new SchemaError(`${path}: no data rows (need a header plus rows)`);
  }
  const columns = lines[0].split(",").map((c) => c.trim());
  const rows = lines.slice(1).map((line, i) => {
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      throw new SchemaError(
        `${path}: row ${i + 1} has ${cells.length} cells, header has ${columns.length}`
      );
    }
    return cells.map(Number);
  });
  return { path, columns, rows };
}

/** Index of a required column, or a SchemaError naming what exists. */
export function columnIndex(table: Table, name: string): number {
  const idx = table.columns.indexOf(name);
  if (idx < 0) {
    throw new SchemaError(
      `${table.path}: missing column '${name}' (has: ${table.columns.join(", ")})`
    );
  }
  return idx;
}

export function column(table: Table, name: string): number[] {
  const idx = columnIndex(table, name);
  return table.rows.map((r) => r[idx]);
}

/** All columns whose name starts with the prefix, e.g. c_1, c_2, ... */
export function columnsWithPrefix(table: Table, prefix: string): string[] {
  const names = table.columns.filter((c) => c.startsWith(prefix));
  if (names.length === 0) {
    throw new SchemaError(
      `${table.path}: no '${prefix}*' columns (has: ${table.columns.join(", ")})`
    );
  }
  return names;
}
