/**
 * Minimal deterministic SVG scene builder: fixed canvas, log/linear axes,
 * polylines, bands, markers.  No timestamps or randomness anywhere, so a
 * re-render of the same inputs is byte-identical.
 */

export interface Frame {
  width: number;
  height: number;
  left: number;
  right: number;
  top: number;
  bottom: number;
}

export const DEFAULT_FRAME: Frame = {
  width: 720,
  height: 440,
  left: 72,
  right: 24,
  top: 40,
  bottom: 56,
};

export type Scale = (value: number) => number;

const fmt = (x: number): string => {
  if (!Number.isFinite(x)) return "0";
  const s = x.toFixed(2);
  return s === "-0.00" ? "0.00" : s;
};

export function logScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const a = Math.log10(lo);
  const b = Math.log10(hi);
  return (v: number) => outLo + ((Math.log10(v) - a) / (b - a)) * (outHi - outLo);
}

export function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  return (v: number) => outLo + ((v - lo) / (hi - lo)) * (outHi - outLo);
}

export function decadeTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo)); Math.pow(10, e) <= hi * (1 + 1e-12); e += 1) {
    ticks.push(Math.pow(10, e));
  }
  if (ticks.length === 0) ticks.push(lo, hi);
  return ticks;
}

export function linearTicks(lo: number, hi: number, count = 5): number[] {
  const raw = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(Math.abs(raw) || 1)));
  const step = Math.ceil(raw / mag) * mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12 * Math.abs(step); v += step) ticks.push(v);
  return ticks;
}

export class Scene {
  private parts: string[] = [];

  constructor(readonly frame: Frame, title: string) {
    const { width, height } = frame;
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="Helvetica, Arial, sans-serif">`,
      `<rect width="${width}" height="${height}" fill="white"/>`,
      `<text x="${fmt(width / 2)}" y="22" text-anchor="middle" font-size="15">${escapeXml(title)}</text>`,
    );
  }

  axisBox(): void {
    const f = this.frame;
    this.parts.push(
      `<rect x="${fmt(f.left)}" y="${fmt(f.top)}" width="${fmt(f.width - f.left - f.right)}" height="${fmt(f.height - f.top - f.bottom)}" fill="none" stroke="black" stroke-width="1"/>`,
    );
  }

  xTick(px: number, label: string): void {
    const y0 = this.frame.height - this.frame.bottom;
    this.parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y0 + 5)}" stroke="black" stroke-width="1"/>`,
      `<text x="${fmt(px)}" y="${fmt(y0 + 18)}" text-anchor="middle" font-size="11">${escapeXml(label)}</text>`,
    );
  }

  yTick(py: number, label: string): void {
    const x0 = this.frame.left;
    this.parts.push(
      `<line x1="${fmt(x0 - 5)}" y1="${fmt(py)}" x2="${fmt(x0)}" y2="${fmt(py)}" stroke="black" stroke-width="1"/>`,
      `<text x="${fmt(x0 - 8)}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${escapeXml(label)}</text>`,
    );
  }

  xLabel(label: string): void {
    this.parts.push(
      `<text x="${fmt((this.frame.left + this.frame.width - this.frame.right) / 2)}" y="${fmt(this.frame.height - 14)}" text-anchor="middle" font-size="12">${escapeXml(label)}</text>`,
    );
  }

  yLabel(label: string): void {
    const x = 18;
    const y = (this.frame.top + this.frame.height - this.frame.bottom) / 2;
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="middle" font-size="12" transform="rotate(-90 ${fmt(x)} ${fmt(y)})">${escapeXml(label)}</text>`,
    );
  }

  band(y1: number, y2: number, fill: string, className: string): void {
    const f = this.frame;
    const top = Math.min(y1, y2);
    this.parts.push(
      `<rect class="${className}" x="${fmt(f.left)}" y="${fmt(top)}" width="${fmt(f.width - f.left - f.right)}" height="${fmt(Math.abs(y2 - y1))}" fill="${fill}" opacity="0.25"/>`,
    );
  }

  cell(x1: number, x2: number, y1: number, y2: number, fill: string, className: string, attrs = ""): void {
    this.parts.push(
      `<rect class="${className}"${attrs} x="${fmt(Math.min(x1, x2))}" y="${fmt(Math.min(y1, y2))}" width="${fmt(Math.abs(x2 - x1))}" height="${fmt(Math.abs(y2 - y1))}" fill="${fill}" stroke="black" stroke-width="0.4"/>`,
    );
  }

  polyline(points: Array<[number, number]>, stroke: string, className: string, dash = ""): void {
    const attr = dash ? ` stroke-dasharray="${dash}"` : "";
    const path = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline class="${className}" points="${path}" fill="none" stroke="${stroke}" stroke-width="1.6"${attr}/>`,
    );
  }

  dot(x: number, y: number, fill: string, className: string): void {
    this.parts.push(`<circle class="${className}" cx="${fmt(x)}" cy="${fmt(y)}" r="2.6" fill="${fill}"/>`);
  }

  errorBar(x: number, y1: number, y2: number, stroke: string): void {
    this.parts.push(
      `<line class="error-bar" x1="${fmt(x)}" y1="${fmt(y1)}" x2="${fmt(x)}" y2="${fmt(y2)}" stroke="${stroke}" stroke-width="1"/>`,
    );
  }

  marker(px: number, label: string): void {
    const f = this.frame;
    this.parts.push(
      `<line class="scale-marker" x1="${fmt(px)}" y1="${fmt(f.top)}" x2="${fmt(px)}" y2="${fmt(f.height - f.bottom)}" stroke="#555555" stroke-width="1" stroke-dasharray="4 3"/>`,
      `<text x="${fmt(px + 3)}" y="${fmt(f.top + 12)}" font-size="11" fill="#333333">${escapeXml(label)}</text>`,
    );
  }

  note(text: string, className: string): void {
    const f = this.frame;
    this.parts.push(
      `<text class="${className}" x="${fmt((f.left + f.width - f.right) / 2)}" y="${fmt((f.top + f.height - f.bottom) / 2)}" text-anchor="middle" font-size="18" fill="#aa3333">${escapeXml(text)}</text>`,
    );
  }

  legend(entries: Array<[string, string]>): void {
    const f = this.frame;
    let y = f.top + 14;
    for (const [color, label] of entries) {
      this.parts.push(
        `<line x1="${fmt(f.width - f.right - 150)}" y1="${fmt(y - 4)}" x2="${fmt(f.width - f.right - 128)}" y2="${fmt(y - 4)}" stroke="${color}" stroke-width="2"/>`,
        `<text x="${fmt(f.width - f.right - 122)}" y="${fmt(y)}" font-size="11">${escapeXml(label)}</text>`,
      );
      y += 16;
    }
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
