/**
 * Figure renderer for the simulator's CSV outputs.
 *
 *   node dist/render.js --kind KIND --in a.csv[,b.csv...] --out fig.svg
 *                       [--crop XMIN,XMAX] [--column c_1]
 *
 * Kinds:
 *   kernel       kernel_profiles.csv -> interaction profiles vs r
 *   convergence  convergence.csv     -> log-log errors vs dx + slope fits
 *   snapshot     1D snapshot csv     -> concentrations vs x
 *   energy       energy.csv          -> free energy parts vs t
 *   sweep        several snapshots   -> overlay of one concentration column
 *   surface      2D snapshot csv     -> heatmap of one column
 *
 * Rendering is read-only and deterministic: the same inputs produce
 * byte-identical SVG.  Exit codes: 0 ok, 1 bad usage or schema mismatch.
 */

import { basename } from "path";
import { writeFileSync } from "fs";

import { SchemaError, Table, column, columnsWithPrefix, readTable } from "./csv.js";
import { Series, fmt, heatmap, lineChart, seriesColor } from "./plot.js";

export interface FigureJob {
  kind: "kernel" | "convergence" | "snapshot" | "energy" | "sweep" | "surface";
  inputs: string[];
  output: string;
  crop?: [number, number];
  column?: string;
}

function cropped(x: number[], ys: number[][], crop?: [number, number]): [number[], number[][]] {
  if (!crop) return [x, ys];
  const keep = x.map((v) => v >= crop[0] && v <= crop[1]);
  const fx = x.filter((_, i) => keep[i]);
  return [fx, ys.map((y) => y.filter((_, i) => keep[i]))];
}

function singleInput(job: FigureJob): Table {
  if (job.inputs.length !== 1) {
    throw new SchemaError(`kind '${job.kind}' takes exactly one input file`);
  }
  return readTable(job.inputs[0]);
}

function renderKernel(job: FigureJob): string {
  const table = singleInput(job);
  const r = column(table, "r");
  const names = table.columns.filter((c) => c !== "r");
  if (names.length === 0) {
    throw new SchemaError(`${table.path}: expected curve columns besides 'r'`);
  }
  const series: Series[] = names.map((name, i) => ({
    x: r,
    y: column(table, name),
    label: name,
    color: seriesColor(i),
  }));
  return lineChart({
    title: "Interaction kernel profiles",
    xLabel: "r",
    yLabel: "kernel value",
    series,
  });
}

/** Least-squares slope of log(err) against log(dx). */
function logSlope(dx: number[], err: number[]): number {
  const xs = dx.map(Math.log);
  const ys = err.map(Math.log);
  const n = xs.length;
  const mx = xs.reduce((a, b) => a + b, 0) / n;
  const my = ys.reduce((a, b) => a + b, 0) / n;
  let num = 0, den = 0;
  for (let i = 0; i < n; i++) {
    num += (xs[i] - mx) * (ys[i] - my);
    den += (xs[i] - mx) ** 2;
  }
  return num / den;
}

function renderConvergence(job: FigureJob): string {
  const table = singleInput(job);
  const dx = column(table, "dx");
  const norms = ["linf", "l1", "l2"];
  const series: Series[] = [];
  const notes: string[] = [];
  norms.forEach((name, i) => {
    const err = column(table, name);
    series.push({ x: dx, y: err, label: name, color: seriesColor(i) });
    notes.push(`${name} slope ${logSlope(dx, err).toFixed(3)}`);
  });
  // first-order guide anchored to the last l1 point
  const l1 = column(table, "l1");
  const anchor = l1[l1.length - 1] / dx[dx.length - 1];
  series.push({
    x: dx,
    y: dx.map((d) => anchor * d),
    label: "slope 1 guide",
    color: "#888888",
    dash: "6,4",
    width: 1,
  });
  return lineChart({
    title: "Refinement study",
    xLabel: "dx",
    yLabel: "error",
    series,
    logX: true,
    logY: true,
    notes: [notes.join("   ")],
  });
}

function renderSnapshot(job: FigureJob): string {
  const table = singleInput(job);
  if (table.columns.includes("y")) {
    throw new SchemaError(
      `${table.path}: 2D snapshot; use --kind surface for long-form x,y tables`
    );
  }
  const x = column(table, "x");
  const names = columnsWithPrefix(table, "c_");
  const ys = names.map((n) => column(table, n));
  const [cx, cys] = cropped(x, ys, job.crop);
  const series: Series[] = names.map((name, i) => ({
    x: cx,
    y: cys[i],
    label: name,
    color: seriesColor(i),
  }));
  return lineChart({
    title: `Concentrations (${basename(table.path)})`,
    xLabel: "x",
    yLabel: "concentration",
    series,
  });
}

function renderEnergy(job: FigureJob): string {
  const table = singleInput(job);
  const t = column(table, "t");
  const names = ["E", "F1", "F2", "F3", "F4"];
  const series: Series[] = names.map((name, i) => ({
    x: t,
    y: column(table, name),
    label: name === "E" ? "E (total)" : name,
    color: seriesColor(i),
    width: name === "E" ? 2.5 : 1.2,
  }));
  return lineChart({
    title: "Free energy decay",
    xLabel: "t",
    yLabel: "energy",
    series,
  });
}

function renderSweep(job: FigureJob): string {
  if (job.inputs.length < 2) {
    throw new SchemaError("kind 'sweep' takes two or more snapshot files");
  }
  const col = job.column ?? "c_1";
  const series: Series[] = [];
  job.inputs.forEach((path, i) => {
    const table = readTable(path);
    const x = column(table, "x");
    const y = column(table, col);
    const [cx, cys] = cropped(x, [y], job.crop);
    series.push({
      x: cx,
      y: cys[0],
      label: basename(path).replace(/\.csv$/, ""),
      color: seriesColor(i),
    });
  });
  return lineChart({
    title: `Steady-state overlay (${col})`,
    xLabel: "x",
    yLabel: col,
    series,
  });
}

function renderSurface(job: FigureJob): string {
  const table = singleInput(job);
  const col = job.column ?? "c_1";
  let x = column(table, "x");
  let y = column(table, "y");
  let v = column(table, col);
  if (job.crop) {
    const [lo, hi] = job.crop;
    const keep = x.map((vx, i) => vx >= lo && vx <= hi && y[i] >= lo && y[i] <= hi);
    x = x.filter((_, i) => keep[i]);
    y = y.filter((_, i) => keep[i]);
    v = v.filter((_, i) => keep[i]);
  }
  return heatmap({
    title: `${col} (${basename(table.path)})`,
    xLabel: "x",
    yLabel: "y",
    x,
    y,
    value: v,
    legend: col,
  });
}

export function render(job: FigureJob): string {
  switch (job.kind) {
    case "kernel":
      return renderKernel(job);
    case "convergence":
      return renderConvergence(job);
    case "snapshot":
      return renderSnapshot(job);
    case "energy":
      return renderEnergy(job);
    case "sweep":
      return renderSweep(job);
    case "surface":
      return renderSurface(job);
    default:
      throw new SchemaError(`unknown figure kind '${(job as FigureJob).kind}'`);
  }
}

export function renderToFile(job: FigureJob): void {
  writeFileSync(job.output, render(job));
}

function parseArgs(argv: string[]): FigureJob {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new SchemaError(`bad arguments near '${key}'`);
    }
    opts.set(key.slice(2), argv[i + 1]);
  }
  for (const required of ["kind", "in", "out"]) {
    if (!opts.has(required)) throw new SchemaError(`missing --${required}`);
  }
  const job: FigureJob = {
    kind: opts.get("kind") as FigureJob["kind"],
    inputs: opts.get("in")!.split(",").filter((s) => s.length > 0),
    output: opts.get("out")!,
  };
  if (opts.has("crop")) {
    const parts = opts.get("crop")!.split(",").map(Number);
    if (parts.length !== 2 || parts.some(Number.isNaN)) {
      throw new SchemaError(`--crop expects XMIN,XMAX, got '${opts.get("crop")}'`);
    }
    job.crop = [parts[0], parts[1]];
  }
  if (opts.has("column")) job.column = opts.get("column");
  return job;
}

export function main(argv: string[]): number {
  try {
    const job = parseArgs(argv);
    renderToFile(job);
    console.log(`SVG -> ${job.output}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      console.error(`render: ${err.message}`);
      return 1;
    }
    if (err instanceof Error && "code" in err) {
      console.error(`render: ${err.message}`);
      return 1;
    }
    throw err;
  }
}

const isCliEntry =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(basename(process.argv[1]));
if (isCliEntry) {
  process.exit(main(process.argv.slice(2)));
}
