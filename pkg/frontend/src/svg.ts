/**
 * Deterministic SVG rendering of figure data: fixed styling, no timestamps,
 * identical input produces the identical byte stream.  Nonpositive values
 * are dropped on log axes (they have no position there; the harness emits
 * them only for exactly-zero errors).
 */

import { FigureData, Marker, Series } from "./figures.js";

export interface RenderOptions {
  width?: number;
  height?: number;
}

interface Scale {
  (v: number): number;
  ticks: number[];
}

const MARGIN = { top: 36, right: 20, bottom: 44, left: 64 };

function fmt(v: number): string {
  return v.toFixed(2);
}

function tickLabel(v: number): string {
  if (v === 0) return "0";
  const exp = Math.log10(Math.abs(v));
  if (Number.isInteger(exp)) return `1e${exp}`;
  if (Math.abs(v) >= 0.01 && Math.abs(v) < 10000) return String(v);
  return v.toExponential(0);
}

function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  const first = Math.ceil(Math.log10(lo) - 1e-9);
  const last = Math.floor(Math.log10(hi) + 1e-9);
  const step = Math.max(1, Math.ceil((last - first) / 8));
  for (let e = first; e <= last; e += step) ticks.push(10 ** e);
  return ticks;
}

function linTicks(lo: number, hi: number): number[] {
  const span = hi - lo;
  const step = 10 ** Math.floor(Math.log10(span / 4));
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + 1e-12; v += step) {
    ticks.push(v);
  }
  return ticks;
}

function makeScale(
  values: number[],
  log: boolean,
  range: [number, number],
  reversed = false
): Scale {
  const finite = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  let lo = Math.min(...finite);
  let hi = Math.max(...finite);
  if (lo === hi) {
    lo = log ? lo / 2 : lo - 1;
    hi = log ? hi * 2 : hi + 1;
  }
  if (log) {
    lo = 10 ** Math.floor(Math.log10(lo));
    hi = 10 ** Math.ceil(Math.log10(hi));
  }
  const [r0, r1] = reversed ? [range[1], range[0]] : range;
  const t = (v: number) => (log ? Math.log10(v / lo) / Math.log10(hi / lo) : (v - lo) / (hi - lo));
  const scale = ((v: number) => r0 + (r1 - r0) * t(v)) as Scale;
  scale.ticks = log ? logTicks(lo, hi) : linTicks(lo, hi);
  return scale;
}

function markerShape(marker: Marker, cx: number, cy: number, color: string): string {
  const r = 3.5;
  switch (marker) {
    case "circle":
      return `<circle cx="${fmt(cx)}" cy="${fmt(cy)}" r="${r}" fill="none" stroke="${color}" stroke-width="1.3"/>`;
    case "triangle": {
      const pts = [
        [cx, cy - r],
        [cx - r, cy + r],
        [cx + r, cy + r],
      ]
        .map(([x, y]) => `${fmt(x)},${fmt(y)}`)
        .join(" ");
      return `<polygon points="${pts}" fill="${color}" fill-opacity="0.45" stroke="none"/>`;
    }
    case "star": {
      const pts: string[] = [];
      for (let i = 0; i < 10; i++) {
        const rad = i % 2 === 0 ? r + 1.5 : (r + 1.5) / 2.4;
        const a = (Math.PI / 5) * i - Math.PI / 2;
        pts.push(`${fmt(cx + rad * Math.cos(a))},${fmt(cy + rad * Math.sin(a))}`);
      }
      return `<polygon points="${pts.join(" ")}" fill="${color}" stroke="none"/>`;
    }
  }
}

function seriesSvg(s: Series, sx: Scale, sy: Scale, yLog: boolean): string {
  const parts: string[] = [];
  const keep = s.x
    .map((x, i) => [x, s.y[i]] as [number, number])
    .filter(([, y]) => Number.isFinite(y) && (!yLog || y > 0));
  if (s.kind === "line") {
    const path = keep
      .map(([x, y], i) => `${i === 0 ? "M" : "L"}${fmt(sx(x))} ${fmt(sy(y))}`)
      .join(" ");
    const dash = s.dashed ? ' stroke-dasharray="6 3"' : "";
    parts.push(
      `<path d="${path}" fill="none" stroke="${s.color}" stroke-width="1.6"${dash}/>`
    );
  }
  if (s.kind === "points" || s.marker) {
    const marker = s.marker ?? "circle";
    for (const [x, y] of keep) {
      parts.push(markerShape(marker, sx(x), sy(y), s.color));
    }
  }
  return parts.join("\n");
}

export function renderSvg(fig: FigureData, opts: RenderOptions = {}): string {
  const width = opts.width ?? 720;
  const height = opts.height ?? 480;
  const plotW: [number, number] = [MARGIN.left, width - MARGIN.right];
  const plotH: [number, number] = [height - MARGIN.bottom, MARGIN.top];
  const xs = fig.series.flatMap((s) => s.x);
  const ys = fig.series.flatMap((s, i) =>
    s.y.filter((v) => Number.isFinite(v) && (!fig.yLog || v > 0))
  );
  if (ys.length === 0) {
    throw new Error(`${fig.id}: no plottable data`);
  }
  const sx = makeScale(xs, fig.xLog, plotW, fig.xReversed);
  const sy = makeScale(ys, fig.yLog, plotH);
  const out: string[] = [];
  out.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`
  );
  out.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  out.push(
    `<text x="${width / 2}" y="20" text-anchor="middle" font-size="14">${fig.title}</text>`
  );
  // axes
  const [x0, x1] = plotW;
  const [y0, y1] = plotH;
  out.push(
    `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#333" stroke-width="1"/>`
  );
  for (const t of sx.ticks) {
    const px = sx(t);
    out.push(`<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y0 + 5}" stroke="#333"/>`);
    out.push(
      `<text x="${fmt(px)}" y="${y0 + 18}" text-anchor="middle" font-size="11">${tickLabel(t)}</text>`
    );
    out.push(
      `<line x1="${fmt(px)}" y1="${y0}" x2="${fmt(px)}" y2="${y1}" stroke="#ddd" stroke-width="0.5"/>`
    );
  }
  for (const t of sy.ticks) {
    const py = sy(t);
    out.push(`<line x1="${x0 - 5}" y1="${fmt(py)}" x2="${x0}" y2="${fmt(py)}" stroke="#333"/>`);
    out.push(
      `<text x="${x0 - 8}" y="${fmt(py + 3.5)}" text-anchor="end" font-size="11">${tickLabel(t)}</text>`
    );
    out.push(
      `<line x1="${x0}" y1="${fmt(py)}" x2="${x1}" y2="${fmt(py)}" stroke="#ddd" stroke-width="0.5"/>`
    );
  }
  out.push(
    `<text x="${(x0 + x1) / 2}" y="${height - 8}" text-anchor="middle" font-size="12">${fig.xLabel}</text>`
  );
  out.push(
    `<text x="16" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="12" transform="rotate(-90 16 ${(y0 + y1) / 2})">${fig.yLabel}</text>`
  );
  for (const s of fig.series) {
    out.push(seriesSvg(s, sx, sy, fig.yLog));
  }
  // legend
  let ly = y1 + 10;
  for (const s of fig.series) {
    const lx = x0 + 10;
    if (s.kind === "line") {
      const dash = s.dashed ? ' stroke-dasharray="6 3"' : "";
      out.push(
        `<line x1="${lx}" y1="${ly}" x2="${lx + 22}" y2="${ly}" stroke="${s.color}" stroke-width="1.6"${dash}/>`
      );
    }
    if (s.kind === "points" || s.marker) {
      out.push(markerShape(s.marker ?? "circle", lx + 11, ly, s.color));
    }
    out.push(
      `<text x="${lx + 28}" y="${ly + 4}" font-size="11">${s.label}</text>`
    );
    ly += 16;
  }
  out.push("</svg>");
  return out.join("\n") + "\n";
}
