/**
 * Deterministic SVG primitives: line charts (linear or log-log axes) and
 * cell heatmaps.  No timestamps, no randomness, fixed number formatting,
 * so re-rendering identical inputs yields identical bytes.
 */

export interface Series {
  x: number[];
  y: number[];
  label: string;
  color: string;
  width?: number;
  dash?: string;
}

export interface ChartOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logX?: boolean;
  logY?: boolean;
  /** Extra annotation lines drawn under the title. */
  notes?: string[];
  width?: number;
  height?: number;
}

const PALETTE = [
  "#4363d8", "#e6194b", "#3cb44b", "#911eb4", "#f58231",
  "#46f0f0", "#808000", "#000075", "#9a6324", "#800000",
];

export function seriesColor(i: number): string {
  return PALETTE[i % PALETTE.length];
}

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/** Fixed-precision coordinate formatting keeps the output byte-stable. */
function px(v: number): string {
  return v.toFixed(2);
}

export function fmt(v: number): string {
  if (v === 0) return "0";
  const a = Math.abs(v);
  if (a >= 1e4 || a < 1e-3) return v.toExponential(1).replace("+", "");
  return String(parseFloat(v.toPrecision(4)));
}

function niceTicks(min: number, max: number, count: number): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 5, 10].map((m) => m * mag).find((n) => n >= rough) ?? rough;
  const ticks: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 0.01; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(min) - 1e-9); Math.pow(10, e) <= max * (1 + 1e-9); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks.length ? ticks : [min, max];
}

interface Scale {
  (v: number): number;
}

function makeScale(min: number, max: number, lo: number, hi: number, log: boolean): Scale {
  if (log) {
    const lmin = Math.log10(min);
    const span = Math.log10(max) - lmin || 1;
    return (v) => lo + ((Math.log10(v) - lmin) / span) * (hi - lo);
  }
  const span = max - min || 1;
  return (v) => lo + ((v - min) / span) * (hi - lo);
}

function dataRange(values: number[], log: boolean): [number, number] {
  const usable = values.filter((v) => Number.isFinite(v) && (!log || v > 0));
  if (usable.length === 0) return log ? [1e-3, 1] : [0, 1];
  let min = Math.min(...usable);
  let max = Math.max(...usable);
  if (log) {
    return [min / 1.3, max * 1.3];
  }
  const pad = (max - min || Math.abs(max) || 1) * 0.05;
  return [min - pad, max + pad];
}

export function lineChart(opts: ChartOpts): string {
  const W = opts.width ?? 720;
  const H = opts.height ?? 480;
  const mLeft = 72, mRight = 24, mTop = 48 + 14 * (opts.notes?.length ?? 0), mBottom = 52;

  const xs = opts.series.flatMap((s) => s.x);
  const ys = opts.series.flatMap((s) => s.y);
  const [xMin, xMax] = dataRange(xs, !!opts.logX);
  const [yMin, yMax] = dataRange(ys, !!opts.logY);
  const sx = makeScale(xMin, xMax, mLeft, W - mRight, !!opts.logX);
  const sy = makeScale(yMin, yMax, H - mBottom, mTop, !!opts.logY);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="24" text-anchor="middle" font-size="16">${esc(opts.title)}</text>`
  );
  (opts.notes ?? []).forEach((note, i) => {
    parts.push(
      `<text x="${W / 2}" y="${40 + 14 * i}" text-anchor="middle" font-size="11" fill="#555">${esc(note)}</text>`
    );
  });

  // frame + ticks
  parts.push(
    `<rect x="${mLeft}" y="${mTop}" width="${W - mLeft - mRight}" height="${H - mTop - mBottom}" fill="none" stroke="#999"/>`
  );
  const xTicks = opts.logX ? decadeTicks(xMin, xMax) : niceTicks(xMin, xMax, 7);
  for (const t of xTicks) {
    const X = sx(t);
    if (X < mLeft - 0.5 || X > W - mRight + 0.5) continue;
    parts.push(`<line x1="${px(X)}" y1="${H - mBottom}" x2="${px(X)}" y2="${mTop}" stroke="#eee"/>`);
    parts.push(
      `<text x="${px(X)}" y="${H - mBottom + 18}" text-anchor="middle" font-size="11">${fmt(t)}</text>`
    );
  }
  const yTicks = opts.logY ? decadeTicks(yMin, yMax) : niceTicks(yMin, yMax, 6);
  for (const t of yTicks) {
    const Y = sy(t);
    if (Y < mTop - 0.5 || Y > H - mBottom + 0.5) continue;
    parts.push(`<line x1="${mLeft}" y1="${px(Y)}" x2="${W - mRight}" y2="${px(Y)}" stroke="#eee"/>`);
    parts.push(
      `<text x="${mLeft - 6}" y="${px(Y + 4)}" text-anchor="end" font-size="11">${fmt(t)}</text>`
    );
  }
  parts.push(
    `<text x="${(mLeft + W - mRight) / 2}" y="${H - 12}" text-anchor="middle" font-size="13">${esc(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="18" y="${(mTop + H - mBottom) / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${(mTop + H - mBottom) / 2})">${esc(opts.yLabel)}</text>`
  );

  // series
  for (const s of opts.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i++) {
      const X = s.x[i], Y = s.y[i];
      if (!Number.isFinite(X) || !Number.isFinite(Y)) continue;
      if (opts.logX && X <= 0) continue;
      if (opts.logY && Y <= 0) continue;
      pts.push(`${px(sx(X))},${px(sy(Y))}`);
    }
    if (pts.length === 0) continue;
    const dash = s.dash ? ` stroke-dasharray="${s.dash}"` : "";
    parts.push(
      `<polyline points="${pts.join(" ")}" fill="none" stroke="${s.color}" stroke-width="${s.width ?? 1.5}"${dash}/>`
    );
  }

  // legend
  let ly = mTop + 10;
  for (const s of opts.series) {
    parts.push(
      `<line x1="${mLeft + 10}" y1="${ly}" x2="${mLeft + 34}" y2="${ly}" stroke="${s.color}" stroke-width="2"${s.dash ? ` stroke-dasharray="${s.dash}"` : ""}/>`
    );
    parts.push(
      `<text x="${mLeft + 40}" y="${ly + 4}" font-size="11">${esc(s.label)}</text>`
    );
    ly += 16;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}

export interface HeatmapOpts {
  title: string;
  xLabel: string;
  yLabel: string;
  x: number[];
  y: number[];
  /** value[i] belongs to the cell centered at (x[i], y[i]) */
  value: number[];
  legend: string;
  width?: number;
}

/** Blue -> white -> red-free sequential map (light to saturated). */
function heatColor(t: number): string {
  const stops: Array<[number, [number, number, number]]> = [
    [0.0, [255, 255, 255]],
    [0.33, [166, 206, 227]],
    [0.66, [31, 120, 180]],
    [1.0, [8, 29, 88]],
  ];
  let lo = stops[0], hi = stops[stops.length - 1];
  for (let i = 0; i + 1 < stops.length; i++) {
    if (t >= stops[i][0] && t <= stops[i + 1][0]) {
      lo = stops[i];
      hi = stops[i + 1];
      break;
    }
  }
  const f = (t - lo[0]) / (hi[0] - lo[0] || 1);
  const rgb = lo[1].map((c, i) => Math.round(c + f * (hi[1][i] - c)));
  return `rgb(${rgb[0]},${rgb[1]},${rgb[2]})`;
}

export function heatmap(opts: HeatmapOpts): string {
  const W = opts.width ?? 640;
  const mLeft = 72, mRight = 96, mTop = 48, mBottom = 52;

  const xsUnique = [...new Set(opts.x)].sort((a, b) => a - b);
  const ysUnique = [...new Set(opts.y)].sort((a, b) => a - b);
  const dx = xsUnique.length > 1 ? xsUnique[1] - xsUnique[0] : 1;
  const plotW = W - mLeft - mRight;
  const cell = plotW / xsUnique.length;
  const plotH = cell * ysUnique.length;
  const H = Math.round(plotH + mTop + mBottom);

  const vMax = Math.max(...opts.value.filter(Number.isFinite), 0) || 1;
  const xIndex = new Map(xsUnique.map((v, i) => [v, i]));
  const yIndex = new Map(ysUnique.map((v, i) => [v, i]));

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${W}" height="${H}" viewBox="0 0 ${W} ${H}" font-family="Helvetica, Arial, sans-serif">`
  );
  parts.push(`<rect width="${W}" height="${H}" fill="white"/>`);
  parts.push(
    `<text x="${W / 2}" y="24" text-anchor="middle" font-size="16">${esc(opts.title)}</text>`
  );
  for (let i = 0; i < opts.value.length; i++) {
    const cx = xIndex.get(opts.x[i])!;
    const cy = yIndex.get(opts.y[i])!;
    const X = mLeft + cx * cell;
    const Y = mTop + plotH - (cy + 1) * cell;
    const color = heatColor(Math.max(0, opts.value[i]) / vMax);
    parts.push(
      `<rect x="${px(X)}" y="${px(Y)}" width="${px(cell + 0.05)}" height="${px(cell + 0.05)}" fill="${color}"/>`
    );
  }
  parts.push(
    `<rect x="${mLeft}" y="${mTop}" width="${px(plotW)}" height="${px(plotH)}" fill="none" stroke="#999"/>`
  );

  // axis extents only; cell-level ticks add noise at these sizes
  const xlo = xsUnique[0] - dx / 2, xhi = xsUnique[xsUnique.length - 1] + dx / 2;
  parts.push(`<text x="${mLeft}" y="${H - mBottom + 18}" text-anchor="middle" font-size="11">${fmt(xlo)}</text>`);
  parts.push(`<text x="${px(mLeft + plotW)}" y="${H - mBottom + 18}" text-anchor="middle" font-size="11">${fmt(xhi)}</text>`);
  parts.push(`<text x="${mLeft - 6}" y="${px(mTop + plotH)}" text-anchor="end" font-size="11">${fmt(xlo)}</text>`);
  parts.push(`<text x="${mLeft - 6}" y="${mTop + 10}" text-anchor="end" font-size="11">${fmt(xhi)}</text>`);
  parts.push(
    `<text x="${(mLeft + W - mRight) / 2}" y="${H - 12}" text-anchor="middle" font-size="13">${esc(opts.xLabel)}</text>`
  );
  parts.push(
    `<text x="18" y="${px(mTop + plotH / 2)}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${px(mTop + plotH / 2)})">${esc(opts.yLabel)}</text>`
  );

  // color bar
  const barX = W - mRight + 24, barH = plotH * 0.8, barY = mTop + plotH * 0.1;
  const steps = 24;
  for (let i = 0; i < steps; i++) {
    const t = i / (steps - 1);
    const Y = barY + barH - ((i + 1) / steps) * barH;
    parts.push(
      `<rect x="${barX}" y="${px(Y)}" width="14" height="${px(barH / steps + 0.05)}" fill="${heatColor(t)}"/>`
    );
  }
  parts.push(`<rect x="${barX}" y="${px(barY)}" width="14" height="${px(barH)}" fill="none" stroke="#999"/>`);
  parts.push(`<text x="${barX + 18}" y="${px(barY + 8)}" font-size="10">${fmt(vMax)}</text>`);
  parts.push(`<text x="${barX + 18}" y="${px(barY + barH)}" font-size="10">0</text>`);
  parts.push(
    `<text x="${barX + 7}" y="${px(barY - 8)}" text-anchor="middle" font-size="11">${esc(opts.legend)}</text>`
  );

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
