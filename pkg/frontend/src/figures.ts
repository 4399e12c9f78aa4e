/**
 * The three figure kinds rendered from an averaged-report CSV:
 *
 *  flux-curve        mean low-to-high flux per shell with 2-sigma bars, the
 *                    cascade band [(1-delta)^2, (1+delta)] x eps_tot, and
 *                    the dissipation-above-shell curve;
 *  shell-energy      mean energy content per shell band, log-log;
 *  admissible-region condition-A / condition-B / admissible tracks per
 *                    shell, shaded exactly where the persisted audit flags
 *                    are set ("vacuous" annotated when nothing qualifies).
 *
 * Every figure carries vertical markers at the viscous-shear threshold
 * kappa_s / sqrt(2) and at the transition and dissipation wavenumbers.
 * Rendering is pure: same CSV in, byte-identical SVG out.
 */

import { readFile, writeFile } from "fs/promises";
import { Report, parseReportCsv } from "./csv.js";
import { DEFAULT_FRAME, Scene, decadeTicks, linearScale, linearTicks, logScale } from "./svg.js";

export type FigureKind = "flux-curve" | "shell-energy" | "admissible-region";

export interface FigureSpec {
  input: string;
  kind: FigureKind;
  delta?: number;
  output: string;
}

const SQRT1_2 = Math.SQRT1_2;

function markerSet(report: Report): Array<[number, string]> {
  const s = report.scalars;
  return [
    [s.kappa_s * SQRT1_2, "k_s/sqrt(2)"],
    [s.kappa_C, "k_C"],
    [s.kappa_eta, "k_eta"],
  ];
}

function xDomain(report: Report): [number, number] {
  const kappas = report.shells.map((r) => r.kappa);
  let lo = Math.min(...kappas);
  let hi = Math.max(...kappas);
  for (const [value] of markerSet(report)) {
    if (Number.isFinite(value) && value > 0) {
      lo = Math.min(lo, value);
      hi = Math.max(hi, value);
    }
  }
  return [lo / 1.3, hi * 1.3];
}

function drawMarkers(scene: Scene, report: Report, sx: (v: number) => number, lo: number, hi: number): void {
  for (const [value, label] of markerSet(report)) {
    if (Number.isFinite(value) && value >= lo && value <= hi) {
      scene.marker(sx(value), label);
    }
  }
}

export function renderFluxCurve(report: Report, delta: number): string {
  const f = DEFAULT_FRAME;
  const eps = report.scalars.eps_tot_mean;
  const lower = (1 - delta) ** 2 * eps;
  const upper = (1 + delta) * eps;
  const fluxes = report.shells.map((r) => r.fluxMean);
  const yLo = Math.min(0, ...fluxes) - 0.08 * eps;
  const yHi = Math.max(upper, ...report.shells.map((r) => r.fluxMean + 2 * r.fluxErr), eps) * 1.15;
  const [xLo, xHi] = xDomain(report);
  const sx = logScale(xLo, xHi, f.left, f.width - f.right);
  const sy = linearScale(yLo, yHi, f.height - f.bottom, f.top);

  const scene = new Scene(f, `energy flux across horizontal wavenumbers (delta = ${delta})`);
  scene.band(sy(lower), sy(upper), "#2ca02c", "cascade-band");
  scene.polyline(report.shells.map((r) => [sx(r.kappa), sy(r.epsHighMean)]), "#ff7f0e", "dissipation-curve", "5 3");
  scene.polyline(report.shells.map((r) => [sx(r.kappa), sy(r.fluxMean)]), "#1f77b4", "flux-curve");
  for (const r of report.shells) {
    scene.errorBar(sx(r.kappa), sy(r.fluxMean - 2 * r.fluxErr), sy(r.fluxMean + 2 * r.fluxErr), "#1f77b4");
    scene.dot(sx(r.kappa), sy(r.fluxMean), "#1f77b4", "flux-point");
  }
  drawMarkers(scene, report, sx, xLo, xHi);
  scene.axisBox();
  for (const t of decadeTicks(xLo, xHi)) scene.xTick(sx(t), String(t));
  for (const t of linearTicks(yLo, yHi)) scene.yTick(sy(t), t.toPrecision(3));
  scene.xLabel("horizontal wavenumber");
  scene.yLabel("rate per unit mass");
  scene.legend([
    ["#1f77b4", "flux across shell"],
    ["#ff7f0e", "dissipation above shell"],
    ["#2ca02c", "cascade band"],
  ]);
  return scene.render();
}

export function renderShellEnergy(report: Report): string {
  const f = DEFAULT_FRAME;
  const rows = report.shells;
  const energies = rows.map((r, i) => r.eHighMean - (i + 1 < rows.length ? rows[i + 1].eHighMean : 0));
  const positive = energies.filter((e) => e > 0);
  const floor = (positive.length ? Math.min(...positive) : 1) * 0.5;
  const clamped = energies.map((e) => Math.max(e, floor));
  const [xLo, xHi] = xDomain(report);
  const yHi = Math.max(...clamped) * 2;
  const sx = logScale(xLo, xHi, f.left, f.width - f.right);
  const sy = logScale(floor, yHi, f.height - f.bottom, f.top);

  const scene = new Scene(f, "mean energy per horizontal-wavenumber shell");
  scene.polyline(rows.map((r, i) => [sx(r.kappa), sy(clamped[i])]), "#1f77b4", "shell-energy-curve");
  rows.forEach((r, i) => scene.dot(sx(r.kappa), sy(clamped[i]), "#1f77b4", "shell-energy-point"));
  drawMarkers(scene, report, sx, xLo, xHi);
  scene.axisBox();
  for (const t of decadeTicks(xLo, xHi)) scene.xTick(sx(t), String(t));
  for (const t of decadeTicks(floor, yHi)) scene.yTick(sy(t), t.toExponential(0));
  scene.xLabel("horizontal wavenumber");
  scene.yLabel("band energy");
  return scene.render();
}

export function renderAdmissibleRegion(report: Report): string {
  const f = DEFAULT_FRAME;
  const rows = report.shells;
  const [xLo, xHi] = xDomain(report);
  const sx = logScale(xLo, xHi, f.left, f.width - f.right);
  const tracks: Array<[string, (r: typeof rows[number]) => boolean, string]> = [
    ["condition A", (r) => r.condA, "#9ecae1"],
    ["condition B", (r) => r.condB, "#a1d99b"],
    ["admissible", (r) => r.admissible, "#fd8d3c"],
  ];
  const innerTop = f.top + 18;
  const innerBottom = f.height - f.bottom - 6;
  const trackHeight = (innerBottom - innerTop) / tracks.length;

  const scene = new Scene(f, "cascade-condition admissible region");
  rows.forEach((r, i) => {
    const left = i === 0 ? xLo : Math.sqrt(rows[i - 1].kappa * r.kappa);
    const right = i + 1 < rows.length ? Math.sqrt(r.kappa * rows[i + 1].kappa) : xHi;
    tracks.forEach(([name, flag, color], t) => {
      const y1 = innerTop + t * trackHeight + 3;
      const y2 = innerTop + (t + 1) * trackHeight - 3;
      const on = flag(r);
      const cls = t === 2 ? (on ? "admissible-cell" : "inadmissible-cell") : `track-${t}-cell`;
      const attrs = ` data-kappa="${r.kappa}" data-on="${on ? 1 : 0}"`;
      scene.cell(sx(left), sx(right), y1, y2, on ? color : "#f0f0f0", cls, attrs);
    });
  });
  tracks.forEach(([name], t) => {
    const y = innerTop + t * trackHeight + trackHeight / 2 + 4;
    scene.yTick(y, name);
  });
  drawMarkers(scene, report, sx, xLo, xHi);
  scene.axisBox();
  for (const t of decadeTicks(xLo, xHi)) scene.xTick(sx(t), String(t));
  scene.xLabel("horizontal wavenumber");
  if (!rows.some((r) => r.admissible)) {
    scene.note("vacuous: no shell satisfies both conditions", "vacuous-note");
  }
  return scene.render();
}

export function renderReport(report: Report, kind: FigureKind, delta?: number): string {
  const d = delta ?? report.scalars.delta ?? 0.5;
  switch (kind) {
    case "flux-curve":
      return renderFluxCurve(report, d);
    case "shell-energy":
      return renderShellEnergy(report);
    case "admissible-region":
      return renderAdmissibleRegion(report);
    default:
      throw new Error(`unknown figure kind '${kind satisfies never}'`);
  }
}

export async function render(spec: FigureSpec): Promise<string> {
  const text = await readFile(spec.input, "utf8");
  const report = parseReportCsv(text);
  const svg = renderReport(report, spec.kind, spec.delta);
  await writeFile(spec.output, svg, "utf8");
  return spec.output;
}
