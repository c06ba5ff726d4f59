/**
 * CSV loading and schema validation for srvar experiment outputs.
 *
 * Cells are typed on read: numeric strings become numbers, true/false become
 * booleans, and empty cells become null (the harness writes an empty cell
 * where a quantity is undefined, e.g. relative errors against an exact zero).
 */

import Papa from "papaparse";

export type Cell = string | number | boolean | null;
export type Row = Record<string, Cell>;

export interface Table {
  columns: string[];
  rows: Row[];
}

export function parseCsv(text: string): Table {
  const parsed = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new Error(`CSV parse error at row ${first.row}: ${first.message}`);
  }
  const columns = parsed.meta.fields ?? [];
  const rows = parsed.data.map((raw) => {
    const row: Row = {};
    for (const col of columns) {
      row[col] = typeCell(raw[col] ?? "");
    }
    return row;
  });
  return { columns, rows };
}

function typeCell(value: string): Cell {
  if (value === "") return null;
  if (value === "true") return true;
  if (value === "false") return false;
  if (value === "inf") return Infinity;
  if (value === "-inf") return -Infinity;
  const num = Number(value);
  return Number.isNaN(num) ? value : num;
}

export interface SchemaReport {
  ok: boolean;
  missing: string[];
  extra: string[];
}

/** Check that a table carries the documented columns; extra columns pass. */
export function validateSchema(table: Table, required: string[]): SchemaReport {
  const have = new Set(table.columns);
  const missing = required.filter((c) => !have.has(c));
  const extra = table.columns.filter((c) => !required.includes(c));
  return { ok: missing.length === 0, missing, extra };
}

export function numbers(rows: Row[], column: string): number[] {
  return rows.map((r) => {
    const v = r[column];
    if (typeof v !== "number") {
      throw new Error(`expected number in column '${column}', got ${String(v)}`);
    }
    return v;
  });
}
