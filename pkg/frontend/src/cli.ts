/**
 * figures <figure-id|all> --input <dir> --output <dir>
 *
 * Reads <input>/<figure-id>/{bounds,summary,trials}.csv as required by the
 * figure and writes <output>/<figure-id>.svg.  Input CSVs are never touched.
 */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { parseCsv, Table } from "./csv.js";
import {
  FIGURE_IDS,
  FigureId,
  FigureInputs,
  buildFigure,
  requiredInputs,
} from "./figures.js";
import { renderSvg } from "./svg.js";

function usage(): never {
  console.error("usage: figures <figure-id|all> --input <dir> --output <dir>");
  console.error(`figure ids: ${FIGURE_IDS.join(", ")}`);
  process.exit(2);
}

interface Args {
  ids: FigureId[];
  input: string;
  output: string;
}

export function parseArgs(argv: string[]): Args {
  const positional: string[] = [];
  let input: string | undefined;
  let output: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--input") input = argv[++i];
    else if (arg === "--output") output = argv[++i];
    else if (arg.startsWith("--")) usage();
    else positional.push(arg);
  }
  if (positional.length !== 1 || input === undefined || output === undefined) {
    usage();
  }
  const id = positional[0];
  const ids =
    id === "all" ? [...FIGURE_IDS] : FIGURE_IDS.filter((f) => f === id);
  if (ids.length === 0) {
    console.error(`unknown figure id '${id}'; choose from ${FIGURE_IDS.join(", ")}`);
    process.exit(2);
  }
  return { ids, input, output };
}

export function loadInputs(dir: string, id: FigureId): FigureInputs {
  const inputs: FigureInputs = {};
  for (const spec of requiredInputs(id)) {
    const path = join(dir, id, `${spec.file}.csv`);
    if (!existsSync(path)) {
      throw new Error(`${id}: required input not found: ${path}`);
    }
    inputs[spec.file] = parseCsv(readFileSync(path, "utf8")) as Table;
  }
  return inputs;
}

export function main(argv: string[]): number {
  const args = parseArgs(argv);
  mkdirSync(args.output, { recursive: true });
  for (const id of args.ids) {
    let svg: string;
    try {
      svg = renderSvg(buildFigure(id, loadInputs(args.input, id)));
    } catch (err) {
      console.error(String(err instanceof Error ? err.message : err));
      return 1;
    }
    const outPath = join(args.output, `${id}.svg`);
    writeFileSync(outPath, svg);
    console.log(`wrote ${outPath}`);
  }
  return 0;
}

const isDirectRun =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (isDirectRun) {
  process.exit(main(process.argv.slice(2)));
}
