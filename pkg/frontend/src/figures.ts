/**
 * Figure definitions: which CSVs each figure needs and how its plot series
 * are extracted from them.  Builders are pure (Table in, FigureData out), so
 * tests can assert on the plotted data arrays rather than on pixels.
 */

import { Row, Table, validateSchema } from "./csv.js";

export const FIGURE_IDS = [
  "fig2",
  "fig3_left",
  "fig3_right",
  "fig4_left",
  "fig4_right",
] as const;

export type FigureId = (typeof FIGURE_IDS)[number];

export type Marker = "circle" | "triangle" | "star";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  kind: "line" | "points";
  marker?: Marker;
  color: string;
  dashed?: boolean;
}

export interface FigureData {
  id: FigureId;
  title: string;
  xLabel: string;
  yLabel: string;
  xLog: boolean;
  yLog: boolean;
  xReversed?: boolean;
  series: Series[];
}

export interface FigureInputs {
  bounds?: Table;
  summary?: Table;
  trials?: Table;
}

export interface InputSpec {
  file: "bounds" | "summary" | "trials";
  columns: string[];
}

const BOUND_COLS = ["n", "lambda", "method", "value"];
const SUMMARY_COLS = [
  "algorithm",
  "n",
  "sr_mean_rel_error",
  "mean_trial_rel_error",
  "rn_rel_error",
];
const TRIAL_COLS = ["algorithm", "trial", "n", "rel_error"];

/** CSV files (and columns) each figure consumes. */
export function requiredInputs(id: FigureId): InputSpec[] {
  switch (id) {
    case "fig2":
      return [{ file: "bounds", columns: BOUND_COLS }];
    case "fig3_left":
    case "fig3_right":
      return [
        { file: "bounds", columns: BOUND_COLS },
        { file: "summary", columns: SUMMARY_COLS },
        { file: "trials", columns: TRIAL_COLS },
      ];
    case "fig4_left":
    case "fig4_right":
      return [{ file: "summary", columns: SUMMARY_COLS }];
  }
}

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
];

class FigureError extends Error {}

function checkInputs(id: FigureId, inputs: FigureInputs): void {
  for (const spec of requiredInputs(id)) {
    const table = inputs[spec.file];
    if (table === undefined) {
      throw new FigureError(`${id}: missing input file ${spec.file}.csv`);
    }
    const report = validateSchema(table, spec.columns);
    if (!report.ok) {
      throw new FigureError(
        `${id}: ${spec.file}.csv is missing columns: ${report.missing.join(", ")}`
      );
    }
  }
}

function sortedXY(rows: Row[], xCol: string, yCol: string): [number[], number[]] {
  const pairs = rows
    .filter((r) => typeof r[xCol] === "number" && typeof r[yCol] === "number")
    .map((r) => [r[xCol] as number, r[yCol] as number] as [number, number]);
  pairs.sort((a, b) => a[0] - b[0]);
  return [pairs.map((p) => p[0]), pairs.map((p) => p[1])];
}

function boundCurve(
  bounds: Table,
  method: string,
  label: string,
  color: string,
  xCol: "n" | "lambda" = "n"
): Series {
  const rows = bounds.rows.filter((r) => r.method === method);
  if (rows.length === 0) {
    throw new FigureError(`no '${method}' rows in bounds.csv`);
  }
  const [x, y] = sortedXY(rows, xCol, "value");
  return { label, x, y, kind: "line", color };
}

const METHOD_LABELS: Record<string, string> = {
  det_textbook: "deterministic bound",
  bc_textbook: "BC bound",
  ah_textbook: "AH bound",
  dm_textbook: "DM bound",
  ah_pairwise_sum: "AH pairwise bound",
  hi_pairwise_sum: "Hallman-Ipsen bound",
  bc_pairwise_sum: "BC pairwise bound",
};

function buildFig2(inputs: FigureInputs): FigureData {
  const bounds = inputs.bounds!;
  const series = ["ah_pairwise_sum", "hi_pairwise_sum", "bc_pairwise_sum"].map(
    (m, i) => boundCurve(bounds, m, METHOD_LABELS[m], PALETTE[i])
  );
  return {
    id: "fig2",
    title: "Pairwise summation: probabilistic bound comparison (prob. 0.9)",
    xLabel: "n",
    yLabel: "relative error bound",
    xLog: true,
    yLog: true,
    series,
  };
}

function trialScatter(trials: Table, xOf: (r: Row) => number): Series {
  const rows = trials.rows.filter((r) => typeof r.rel_error === "number");
  return {
    label: "SR instances",
    x: rows.map(xOf),
    y: rows.map((r) => r.rel_error as number),
    kind: "points",
    marker: "triangle",
    color: "#7f7f7f",
  };
}

function summaryMarkers(summary: Table, xCol: "n"): Series[] {
  const [xm, ym] = sortedXY(summary.rows, xCol, "sr_mean_rel_error");
  const [xr, yr] = sortedXY(summary.rows, xCol, "rn_rel_error");
  return [
    {
      label: "SR mean of instances",
      x: xm,
      y: ym,
      kind: "points",
      marker: "circle",
      color: "#000000",
    },
    {
      label: "RN value",
      x: xr,
      y: yr,
      kind: "points",
      marker: "star",
      color: "#e377c2",
    },
  ];
}

const TEXTBOOK_METHODS = ["det_textbook", "bc_textbook", "ah_textbook", "dm_textbook"];

function buildFig3Left(inputs: FigureInputs): FigureData {
  const series = TEXTBOOK_METHODS.map((m, i) =>
    boundCurve(inputs.bounds!, m, METHOD_LABELS[m], PALETTE[i])
  );
  series.push(trialScatter(inputs.trials!, (r) => r.n as number));
  series.push(...summaryMarkers(inputs.summary!, "n"));
  return {
    id: "fig3_left",
    title: "Textbook: bounds and SR errors over n (prob. 0.9)",
    xLabel: "n",
    yLabel: "relative error",
    xLog: true,
    yLog: true,
    series,
  };
}

function buildFig3Right(inputs: FigureInputs): FigureData {
  const series = TEXTBOOK_METHODS.map((m, i) =>
    boundCurve(inputs.bounds!, m, METHOD_LABELS[m], PALETTE[i], "lambda")
  );
  // the SR/RN samples do not depend on lambda; repeat them at every grid
  // point so their band reads across the sweep
  const lambdas = [
    ...new Set(
      inputs.bounds!.rows
        .map((r) => r.lambda)
        .filter((v): v is number => typeof v === "number")
    ),
  ].sort((a, b) => a - b);
  const trialRows = inputs.trials!.rows.filter(
    (r) => typeof r.rel_error === "number"
  );
  const x: number[] = [];
  const y: number[] = [];
  for (const lam of lambdas) {
    for (const row of trialRows) {
      x.push(lam);
      y.push(row.rel_error as number);
    }
  }
  series.push({
    label: "SR instances",
    x,
    y,
    kind: "points",
    marker: "triangle",
    color: "#7f7f7f",
  });
  const summaryRow = inputs.summary!.rows[0];
  for (const [col, label, marker, color] of [
    ["sr_mean_rel_error", "SR mean of instances", "circle", "#000000"],
    ["rn_rel_error", "RN value", "star", "#e377c2"],
  ] as [string, string, Marker, string][]) {
    const v = summaryRow?.[col];
    if (typeof v === "number") {
      series.push({
        label,
        x: lambdas,
        y: lambdas.map(() => v),
        kind: "points",
        marker,
        color,
      });
    }
  }
  return {
    id: "fig3_right",
    title: "Textbook: bounds and SR errors over lambda (n = 1e6)",
    xLabel: "lambda",
    yLabel: "relative error",
    xLog: true,
    yLog: true,
    xReversed: true,
    series,
  };
}

function buildFig4(id: "fig4_left" | "fig4_right", inputs: FigureInputs): FigureData {
  const summary = inputs.summary!;
  const algorithms = [...new Set(summary.rows.map((r) => String(r.algorithm)))].sort();
  const series: Series[] = [];
  algorithms.forEach((alg, i) => {
    const rows = summary.rows.filter((r) => r.algorithm === alg);
    const [xs, ys] = sortedXY(rows, "n", "sr_mean_rel_error");
    series.push({
      label: `${alg} SR mean`,
      x: xs,
      y: ys,
      kind: "line",
      marker: "circle",
      color: PALETTE[i],
    });
    const [xr, yr] = sortedXY(rows, "n", "rn_rel_error");
    series.push({
      label: `${alg} RN`,
      x: xr,
      y: yr,
      kind: "line",
      marker: "star",
      color: PALETTE[i],
      dashed: true,
    });
  });
  const interval = id === "fig4_left" ? "[-1, 1]" : "[1024, 1025]";
  return {
    id,
    title: `Textbook vs two-pass forward error, uniform ${interval}`,
    xLabel: "n",
    yLabel: "relative error",
    xLog: true,
    yLog: true,
    series,
  };
}

export function buildFigure(id: FigureId, inputs: FigureInputs): FigureData {
  checkInputs(id, inputs);
  switch (id) {
    case "fig2":
      return buildFig2(inputs);
    case "fig3_left":
      return buildFig3Left(inputs);
    case "fig3_right":
      return buildFig3Right(inputs);
    case "fig4_left":
    case "fig4_right":
      return buildFig4(id, inputs);
  }
}
